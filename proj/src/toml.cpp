// SPDX-License-Identifier: Apache-2.0
//
// jpta-beam: frequency-dependent 3D beam design for joint phase-time arrays
// Copyright (C) 2026 The jpta-beam authors
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

#include "jpta/config.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>

// A small TOML reader covering what hand-written experiment files need:
// [tables], dotted and quoted keys, basic and literal strings, integers,
// floats, booleans, multi-line arrays, inline tables and comments.
// Dates, multi-line strings and arrays of tables are rejected.

namespace jpta
{

using nlohmann::json;

namespace
{

class TomlReader
{
public:
    explicit TomlReader(const std::string &text) : s_(text) {}

    json parse()
    {
        json root = json::object();
        json *table = &root;
        while (true)
        {
            skip_blank_lines();
            if (at_end())
                break;
            if (peek() == '[')
            {
                ++pos_;
                if (peek() == '[')
                    fail("arrays of tables are not supported");
                skip_spaces();
                const auto path = read_key_path();
                skip_spaces();
                expect(']');
                table = &root;
                for (const auto &part : path)
                {
                    json &next = (*table)[part];
                    if (next.is_null())
                        next = json::object();
                    else if (!next.is_object())
                        fail("key '" + part + "' is not a table");
                    table = &next;
                }
            }
            else
            {
                read_assignment(*table);
            }
            end_of_line();
        }
        return root;
    }

private:
    const std::string &s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    [[noreturn]] void fail(const std::string &what) const
    {
        throw std::invalid_argument("config: toml line " + std::to_string(line_) + ": " + what);
    }

    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_spaces()
    {
        while (peek() == ' ' || peek() == '\t')
            ++pos_;
    }

    void skip_comment()
    {
        if (peek() == '#')
            while (!at_end() && peek() != '\n')
                ++pos_;
    }

    void newline()
    {
        if (peek() == '\r')
            ++pos_;
        if (peek() == '\n')
        {
            ++pos_;
            ++line_;
        }
    }

    void skip_blank_lines()
    {
        while (!at_end())
        {
            skip_spaces();
            skip_comment();
            if (peek() == '\n' || peek() == '\r')
                newline();
            else
                break;
        }
    }

    // Whitespace, comments and newlines, as allowed inside arrays.
    void skip_all()
    {
        while (!at_end())
        {
            skip_spaces();
            skip_comment();
            if (peek() == '\n' || peek() == '\r')
                newline();
            else
                break;
        }
    }

    void end_of_line()
    {
        skip_spaces();
        skip_comment();
        if (!at_end() && peek() != '\n' && peek() != '\r')
            fail("unexpected text after value");
        newline();
    }

    std::string read_key_part()
    {
        if (peek() == '"')
            return read_basic_string();
        if (peek() == '\'')
            return read_literal_string();
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
            ++pos_;
        if (pos_ == start)
            fail("expected a key");
        return s_.substr(start, pos_ - start);
    }

    std::vector<std::string> read_key_path()
    {
        std::vector<std::string> parts{read_key_part()};
        skip_spaces();
        while (peek() == '.')
        {
            ++pos_;
            skip_spaces();
            parts.push_back(read_key_part());
            skip_spaces();
        }
        return parts;
    }

    void read_assignment(json &table)
    {
        const auto path = read_key_path();
        skip_spaces();
        expect('=');
        skip_spaces();
        json value = read_value();
        json *node = &table;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
        {
            json &next = (*node)[path[i]];
            if (next.is_null())
                next = json::object();
            else if (!next.is_object())
                fail("key '" + path[i] + "' is not a table");
            node = &next;
        }
        if (node->contains(path.back()))
            fail("duplicate key '" + path.back() + "'");
        (*node)[path.back()] = std::move(value);
    }

    std::string read_basic_string()
    {
        expect('"');
        std::string out;
        while (true)
        {
            if (at_end() || peek() == '\n')
                fail("unterminated string");
            const char c = s_[pos_++];
            if (c == '"')
                return out;
            if (c != '\\')
            {
                out += c;
                continue;
            }
            const char e = s_[pos_++];
            switch (e)
            {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default: fail(std::string("unsupported escape \\") + e);
            }
        }
    }

    std::string read_literal_string()
    {
        expect('\'');
        const std::size_t start = pos_;
        while (!at_end() && peek() != '\'' && peek() != '\n')
            ++pos_;
        if (peek() != '\'')
            fail("unterminated string");
        return s_.substr(start, pos_++ - start);
    }

    json read_value()
    {
        const char c = peek();
        if (c == '"')
        {
            if (s_.compare(pos_, 3, "\"\"\"") == 0)
                fail("multi-line strings are not supported");
            return read_basic_string();
        }
        if (c == '\'')
            return read_literal_string();
        if (c == '[')
            return read_array();
        if (c == '{')
            return read_inline_table();
        if (s_.compare(pos_, 4, "true") == 0)
        {
            pos_ += 4;
            return true;
        }
        if (s_.compare(pos_, 5, "false") == 0)
        {
            pos_ += 5;
            return false;
        }
        return read_number();
    }

    json read_number()
    {
        const std::size_t start = pos_;
        std::string digits;
        bool is_float = false;
        while (!at_end())
        {
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-')
                digits += c;
            else if (c == '.' || c == 'e' || c == 'E')
            {
                digits += c;
                is_float = true;
            }
            else if (c != '_')
                break;
            ++pos_;
        }
        if (digits.empty())
            fail("expected a value");
        if (digits.find('-', 1) != std::string::npos && !is_float)
            fail("dates are not supported");
        char *end = nullptr;
        if (is_float)
        {
            const double v = std::strtod(digits.c_str(), &end);
            if (*end != '\0')
                fail("malformed number '" + s_.substr(start, pos_ - start) + "'");
            return v;
        }
        const long long v = std::strtoll(digits.c_str(), &end, 10);
        if (*end != '\0')
            fail("malformed number '" + s_.substr(start, pos_ - start) + "'");
        return v;
    }

    json read_array()
    {
        expect('[');
        json out = json::array();
        while (true)
        {
            skip_all();
            if (peek() == ']')
            {
                ++pos_;
                return out;
            }
            out.push_back(read_value());
            skip_all();
            if (peek() == ',')
                ++pos_;
            else if (peek() != ']')
                fail("expected ',' or ']' in array");
        }
    }

    json read_inline_table()
    {
        expect('{');
        json out = json::object();
        skip_spaces();
        if (peek() == '}')
        {
            ++pos_;
            return out;
        }
        while (true)
        {
            skip_spaces();
            read_assignment(out);
            skip_spaces();
            if (peek() == ',')
                ++pos_;
            else if (peek() == '}')
            {
                ++pos_;
                return out;
            }
            else
                fail("expected ',' or '}' in inline table");
        }
    }
};

} // namespace

json parse_toml(const std::string &text)
{
    return TomlReader(text).parse();
}

} // namespace jpta
