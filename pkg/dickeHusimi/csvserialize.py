# Copyright 2026 The dicke-husimi authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import csv
import json
import numbers


class CSVSerializer:

    floatFormat = "%.17g"

    def __init__(self, fout, header):
        self.fout = fout
        self.header = tuple(header)
        self.writer = csv.writer(fout, lineterminator="\n")
        self.writer.writerow(self.header)
        self.fout.flush()

    def _formatValue(self, value):
        """
        Floats at full precision; missing values as empty fields.
        """
        if value is None:
            return ""
        if isinstance(value, bool):
            return str(value).lower()
        if isinstance(value, numbers.Integral):
            return str(int(value))
        if isinstance(value, numbers.Real):
            return self.floatFormat % float(value)
        return str(value)

    def writeRow(self, row):
        if len(row) != len(self.header):
            raise ValueError("row has %d fields, header has %d" % (len(row), len(self.header)))
        self.writer.writerow([self._formatValue(v) for v in row])
        self.fout.flush()

    def serialize(self, rows):
        for row in rows:
            self.writeRow(row)


class JSONSerializer:

    def serialize(self, document, fout):
        json.dump(document, fout, indent=1, allow_nan=False)
        fout.write("\n")
