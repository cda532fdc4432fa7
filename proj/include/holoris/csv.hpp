// SPDX-License-Identifier: Apache-2.0
//
// holoris: beam-pattern synthesis and closed-loop channel estimation for
// RIS-aided wideband MIMO simulation
// Copyright (C) 2026 The holoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// CSV output: UTF-8, '\n' line endings, '.' decimal separator, floats at 17
// significant digits so runs are byte-reproducible from (config, seed).

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace holoris {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string &path) : out_(path, std::ios::binary) {
        if (!out_)
            throw config_error("CsvWriter: cannot open " + path);
    }

    /// '#'-prefixed header line (configuration echo, provenance).
    void comment(const std::string &line) { out_ << "# " << line << "\n"; }

    void header(const std::string &columns) { out_ << columns << "\n"; }

    void row(const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i)
                out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    std::ofstream &stream() { return out_; }

  private:
    std::ofstream out_;
};

} // namespace holoris
