import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from hardening.covariance import identity_covariance
from hardening.errors import OutputError
from hardening.export import format_value, write_csv, write_spectrum_csv


class FormatValueTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(format_value(0.1), "0.10000000000000001")
        self.assertEqual(format_value(np.int64(64)), "64")
        self.assertEqual(format_value(np.float64(2.5)), "2.5")
        self.assertEqual(format_value(None), "")
        self.assertEqual(format_value(math.nan), "nan")
        self.assertEqual(format_value(True), "true")


class WriteCsvTests(SimpleTestCase):
    def test_crlf_and_parent_directories(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_csv(Path(tmp) / "nested" / "out.csv", ["N", "value"], [(64, 0.5), (81, None)])
            self.assertEqual(path.read_bytes(), b"N,value\r\n64,0.5\r\n81,\r\n")

    def test_unwritable_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            blocker = Path(tmp) / "blocker"
            blocker.write_text("x")
            with self.assertRaises(OutputError) as ctx:
                write_csv(blocker / "out.csv", ["a"], [])
        self.assertEqual(ctx.exception.exit_code, 1)

    def test_spectrum_dump(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_spectrum_csv(identity_covariance(2), Path(tmp) / "spectrum.csv")
            self.assertEqual(path.read_text().splitlines(), ["index,eigenvalue", "1,1", "2,1"])
