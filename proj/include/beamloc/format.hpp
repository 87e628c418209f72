// SPDX-License-Identifier: Apache-2.0
//
// beamloc: localization-aided mm-wave initial access and coverage analysis
// Copyright (C) 2026 The beamloc authors
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

#ifndef BEAMLOC_FORMAT_HPP
#define BEAMLOC_FORMAT_HPP

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

namespace beamloc
{
    // Shortest round-trip text, independent of the C locale
    inline std::string format_double(double v)
    {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
    }

    // Comma separated, header first, '.' decimal point
    class CsvWriter
    {
    public:
        CsvWriter(std::ostream &out, const std::vector<std::string> &header) : out_(out), width_(header.size())
        {
            write_row(header);
        }

        class Row
        {
        public:
            explicit Row(CsvWriter &w) : w_(w) {}
            Row(const Row &) = delete;
            Row &operator=(const Row &) = delete;
            ~Row() { w_.write_row(cells_); }

            Row &operator<<(double v)
            {
                cells_.push_back(format_double(v));
                return *this;
            }
            Row &operator<<(int v)
            {
                cells_.push_back(std::to_string(v));
                return *this;
            }
            Row &operator<<(long long v)
            {
                cells_.push_back(std::to_string(v));
                return *this;
            }
            Row &operator<<(unsigned long long v)
            {
                cells_.push_back(std::to_string(v));
                return *this;
            }
            Row &operator<<(unsigned long v)
            {
                cells_.push_back(std::to_string(v));
                return *this;
            }
            Row &operator<<(const std::string &v)
            {
                cells_.push_back(v);
                return *this;
            }
            Row &operator<<(const char *v)
            {
                cells_.emplace_back(v);
                return *this;
            }
            Row &operator<<(bool v)
            {
                cells_.emplace_back(v ? "true" : "false");
                return *this;
            }

        private:
            CsvWriter &w_;
            std::vector<std::string> cells_;
        };

        Row row() { return Row(*this); }
        [[nodiscard]] std::size_t width() const { return width_; }

    private:
        void write_row(const std::vector<std::string> &cells)
        {
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                if (i)
                    out_ << ',';
                out_ << cells[i];
            }
            out_ << '\n';
        }

        std::ostream &out_;
        std::size_t width_;
    };
}

#endif
