# -*- coding: utf-8 -*-
# *********************************************************************
# ziprec - recommendation via compression-based matrix completion
# Copyright (C) 2024 The ziprec developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.
# *********************************************************************

import gzip
import unittest
import zlib

from mock import Mock, patch
from parameterized import parameterized

from ziprec.core.exceptions import CompressorError, LimitViolationException, ZiprecException
from ziprec.similarity.compressors import (
    CompressorProfile,
    compressed_length,
    pair_compressed_length,
)

REPETITIVE = b"1:5;2:4;3:5;" * 84  # 1008 bytes


class TestCompressorProfile(unittest.TestCase):
    def test_defaults(self):
        profile = CompressorProfile()

        self.assertEqual((profile.algorithm, profile.level), ("zlib", 9))
        self.assertEqual(profile.describe(), "zlib-9")

    @parameterized.expand([(-1,), (10,)])
    def test_invalid_level(self, level):
        self.assertRaises(LimitViolationException, CompressorProfile, "zlib", level)

    def test_unknown_algorithm(self):
        self.assertRaises(ZiprecException, CompressorProfile, "bzip2")

    def test_profiles_are_hashable_values(self):
        self.assertEqual(CompressorProfile("gzip", 6), CompressorProfile("gzip", 6))
        self.assertEqual(len({CompressorProfile(), CompressorProfile("zlib", 9)}), 1)


class TestCompressedLength(unittest.TestCase):
    @parameterized.expand([("zlib",), ("gzip",), ("deflate",)])
    def test_deterministic(self, algorithm):
        profile = CompressorProfile(algorithm)

        self.assertEqual(
            compressed_length(profile, REPETITIVE), compressed_length(profile, REPETITIVE)
        )

    @parameterized.expand([("zlib",), ("gzip",)])
    def test_empty_string_has_stream_overhead(self, algorithm):
        self.assertGreater(compressed_length(CompressorProfile(algorithm), b""), 0)

    def test_repetition_is_compressed(self):
        profile = CompressorProfile()

        self.assertLess(
            compressed_length(profile, REPETITIVE + REPETITIVE),
            2 * compressed_length(profile, REPETITIVE),
        )

    def test_matches_reference_implementations(self):
        self.assertEqual(
            compressed_length(CompressorProfile("zlib", 9), REPETITIVE),
            len(zlib.compress(REPETITIVE, 9)),
        )
        self.assertEqual(
            compressed_length(CompressorProfile("gzip", 5), REPETITIVE),
            len(gzip.compress(REPETITIVE, compresslevel=5, mtime=0)),
        )

    def test_raw_deflate_has_no_header(self):
        self.assertEqual(
            compressed_length(CompressorProfile("deflate"), REPETITIVE) + 6,
            compressed_length(CompressorProfile("zlib"), REPETITIVE),
        )

    def test_backend_failure_is_not_a_length(self):
        failing = Mock(side_effect=zlib.error("broken"))

        with patch.dict("ziprec.similarity.compressors.compressors", {"zlib": failing}):
            self.assertRaises(CompressorError, compressed_length, CompressorProfile(), b"1:5")

    def test_pair_length_is_symmetric(self):
        profile = CompressorProfile()
        x, y = b"0:5;3:1;4:4", b"1:2;2:2"

        self.assertEqual(
            pair_compressed_length(profile, x, y), pair_compressed_length(profile, y, x)
        )
        self.assertEqual(
            pair_compressed_length(profile, x, y),
            (compressed_length(profile, x + y) + compressed_length(profile, y + x)) / 2.0,
        )
