import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from samples.loaders import SampleFormat, load_sample
from samples.models import OrderedSample, from_raw, upper_order_stat
from tailindex.exceptions import OrderStatisticIndexError, SampleIngestionError


class FromRawTests(SimpleTestCase):
    def test_sorts(self):
        sample = from_raw([3, 1, 2])
        np.testing.assert_array_equal(sample.values, [1.0, 2.0, 3.0])
        self.assertEqual(sample.n, 3)

    def test_keeps_ties(self):
        sample = from_raw([5, 5])
        np.testing.assert_array_equal(sample.values, [5.0, 5.0])
        self.assertEqual(sample.n, 2)

    def test_rejects_nan_and_names_index(self):
        with self.assertRaisesRegex(SampleIngestionError, "index 1"):
            from_raw([1, math.nan])
        with self.assertRaisesRegex(SampleIngestionError, "index 2"):
            from_raw([1, 2, math.inf, 4])

    def test_rejects_short_input(self):
        with self.assertRaises(SampleIngestionError):
            from_raw([1.0])
        with self.assertRaises(SampleIngestionError):
            from_raw([])

    def test_idempotent(self):
        sample = from_raw(np.random.default_rng(3).normal(size=50))
        self.assertEqual(from_raw(sample.values), sample)

    def test_values_are_read_only(self):
        sample = from_raw([2, 1])
        with self.assertRaises(ValueError):
            sample.values[0] = 10.0

    def test_direct_construction_requires_order(self):
        with self.assertRaises(ValueError):
            OrderedSample(values=[2.0, 1.0])


class UpperOrderStatTests(SimpleTestCase):
    def test_extremes(self):
        sample = from_raw([1, 2, 3])
        self.assertEqual(upper_order_stat(sample, 1), 3.0)
        self.assertEqual(upper_order_stat(sample, 3), 1.0)

    def test_counts_from_the_top(self):
        sample = from_raw([0, 0.2, 0.4, 0.6, 1, 2, 3, 5])
        self.assertEqual(sample.upper_order_stat(4), 1.0)

    def test_out_of_range(self):
        sample = from_raw([1, 2, 3])
        for i in (0, 4, -1):
            with self.assertRaises(OrderStatisticIndexError):
                sample.upper_order_stat(i)
        with self.assertRaises(IndexError):
            sample.upper_order_stat(4)

    def test_non_increasing(self):
        sample = from_raw(np.random.default_rng(7).standard_cauchy(200))
        stats = [sample.upper_order_stat(i) for i in range(1, sample.n + 1)]
        self.assertTrue(all(a >= b for a, b in zip(stats, stats[1:])))

    def test_upper_tail_is_largest_first(self):
        sample = from_raw([4, 1, 3, 2])
        np.testing.assert_array_equal(sample.upper_tail(3), [4.0, 3.0, 2.0])


class LoadSampleTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, text):
        path = Path(self.tmp.name) / name
        path.write_text(text, encoding='utf8')
        return path

    def test_plain(self):
        path = self.write('data.txt', "1\n2\n3\n")
        np.testing.assert_array_equal(load_sample(path).values, [1.0, 2.0, 3.0])

    def test_plain_skips_comments_and_blanks(self):
        path = self.write('data.txt', "# header\n\n3\n  \n1.5\n# trailer\n")
        np.testing.assert_array_equal(load_sample(path, 'plain').values, [1.5, 3.0])

    def test_plain_reports_line_number(self):
        path = self.write('data.txt', "1\nabc\n")
        with self.assertRaisesRegex(SampleIngestionError, "line 2"):
            load_sample(path)

    def test_csv_column(self):
        path = self.write('data.csv', "x,y\n3,0\n1,0\n")
        sample = load_sample(path, SampleFormat.CSV_COLUMN, column='x')
        np.testing.assert_array_equal(sample.values, [1.0, 3.0])

    def test_csv_missing_column(self):
        path = self.write('data.csv', "x,y\n3,0\n1,0\n")
        with self.assertRaisesRegex(SampleIngestionError, "'z'"):
            load_sample(path, 'csv-column', column='z')

    def test_csv_bad_token_reports_line(self):
        path = self.write('data.csv', "x\n3\noops\n")
        with self.assertRaisesRegex(SampleIngestionError, "line 3"):
            load_sample(path, 'csv-column', column='x')

        path = self.write('gaps.csv', "x,y\n1,0\n\n\nabc,0\n")
        with self.assertRaisesRegex(SampleIngestionError, "line 5"):
            load_sample(path, 'csv-column', column='x')

    def test_csv_skips_blank_lines(self):
        path = self.write('gaps.csv', "x,y\n3,0\n\n1,0\n")
        np.testing.assert_array_equal(load_sample(path, 'csv-column', column='x').values, [1.0, 3.0])

    def test_invalid_utf8(self):
        plain = Path(self.tmp.name) / 'bytes.txt'
        plain.write_bytes(b'1\n\xff\xfe2\n3\n')
        with self.assertRaises(SampleIngestionError):
            load_sample(plain)

        csv = Path(self.tmp.name) / 'bytes.csv'
        csv.write_bytes(b'x\n1\n\xff\n3\n')
        with self.assertRaises(SampleIngestionError):
            load_sample(csv, 'csv-column', column='x')

    def test_missing_file(self):
        with self.assertRaises(SampleIngestionError):
            load_sample(Path(self.tmp.name) / 'absent.txt')
