// SPDX-License-Identifier: Apache-2.0
//
// fdsi: full-duplex array geometry and self-interference toolkit
// Copyright (C) 2026 The fdsi Authors
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

#pragma once

#include "coarray.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "geometry.hpp"
#include "si_model.hpp"
#include "spectral.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// File formats. All numbers are written in shortest round-trip form with '.' as the decimal
// separator, independent of the C++ or C locale, so outputs are byte-reproducible and reload exactly.
namespace fdsi::io
{
    inline std::string format_double(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    inline double parse_double(std::string_view s)
    {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw parse_error("not a number: '" + std::string(s) + "'");
        return v;
    }

    inline constexpr int max_fraction_digits = 9;

    // Exact rational for the shortest decimal spelling of v (0.1 -> 1/10). Rejects values that
    // need more than max_fraction_digits decimals or exceed 1e9 in magnitude.
    inline Position position_from_double(double v)
    {
        if (!std::isfinite(v) || std::abs(v) > 1e9)
            throw parse_error("position out of range: " + format_double(v));
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
        std::string_view s(buf, static_cast<std::size_t>(res.ptr - buf));
        const bool neg = !s.empty() && s.front() == '-';
        if (neg)
            s.remove_prefix(1);
        const auto dot = s.find('.');
        const std::string_view ip = s.substr(0, dot);
        const std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if (fp.size() > static_cast<std::size_t>(max_fraction_digits))
            throw parse_error("position " + format_double(v) + " has more than " +
                              std::to_string(max_fraction_digits) + " decimal digits");
        std::int64_t num = 0, den = 1;
        for (char c : ip)
            num = num * 10 + (c - '0');
        for (char c : fp)
        {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        return Position(neg ? -num : num, den);
    }

    inline nlohmann::ordered_json position_to_json(const Position &p)
    {
        if (is_integer(p))
            return p.numerator();
        return to_double(p);
    }

    // {"label": ..., "tx": [...], "rx": [...], "units": "half-wavelength"}
    inline nlohmann::ordered_json layout_to_json(const FullDuplexLayout &layout)
    {
        nlohmann::ordered_json j;
        j["label"] = layout.label;
        j["tx"] = nlohmann::ordered_json::array();
        for (const auto &p : layout.tx.positions())
            j["tx"].push_back(position_to_json(p));
        j["rx"] = nlohmann::ordered_json::array();
        for (const auto &p : layout.rx.positions())
            j["rx"].push_back(position_to_json(p));
        j["units"] = "half-wavelength";
        return j;
    }

    // Parses and re-validates a layout. Malformed input throws parse_error; Tx/Rx overlap throws
    // colocated_antennas.
    inline FullDuplexLayout layout_from_json(const nlohmann::json &j)
    {
        if (!j.is_object())
            throw parse_error("geometry: top-level value must be an object");
        if (j.contains("units") && j["units"] != "half-wavelength")
            throw parse_error("geometry: unsupported units (expected \"half-wavelength\")");

        auto read_side = [&](const char *key)
        {
            if (!j.contains(key) || !j[key].is_array())
                throw parse_error(std::string("geometry: missing array \"") + key + "\"");
            std::vector<Position> out;
            for (const auto &v : j[key])
            {
                if (v.is_number_integer())
                    out.emplace_back(v.get<std::int64_t>());
                else if (v.is_number())
                    out.push_back(position_from_double(v.get<double>()));
                else
                    throw parse_error(std::string("geometry: non-numeric entry in \"") + key + "\"");
            }
            return out;
        };
        auto tx = read_side("tx");
        auto rx = read_side("rx");

        const auto rep = validate(tx, rx);
        for (const auto &issue : rep.issues)
        {
            if (issue.severity == ValidationIssue::Severity::info)
                continue;
            if (issue.message.rfind("colocated", 0) == 0)
                throw colocated_antennas("geometry: " + issue.message);
            throw parse_error("geometry: " + issue.message);
        }

        std::string label;
        if (j.contains("label"))
        {
            if (!j["label"].is_string())
                throw parse_error("geometry: \"label\" must be a string");
            label = j["label"].get<std::string>();
        }
        return {ArrayGeometry(std::move(tx)), ArrayGeometry(std::move(rx)), std::move(label)};
    }

    inline nlohmann::json parse_json_text(const std::string &text)
    {
        try
        {
            return nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw parse_error(std::string("invalid JSON: ") + e.what());
        }
    }

    inline std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw parse_error("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    inline FullDuplexLayout read_layout(const std::string &path) { return layout_from_json(parse_json_text(read_file(path))); }

    inline void write_layout(std::ostream &os, const FullDuplexLayout &layout) { os << layout_to_json(layout).dump(2) << '\n'; }

    // ---- matrices ----------------------------------------------------------------------------

    inline bool is_real(const Eigen::MatrixXcd &h)
    {
        for (Eigen::Index i = 0; i < h.size(); ++i)
            if (h.data()[i].imag() != 0.0)
                return false;
        return true;
    }

    inline std::string format_complex(const cplx &z)
    {
        std::string s = format_double(z.real());
        s += std::signbit(z.imag()) ? '-' : '+';
        s += format_double(std::abs(z.imag()));
        s += 'i';
        return s;
    }

    // Accepts "a", "a+bi", "a-bi" and "bi"
    inline cplx parse_complex(std::string_view s)
    {
        while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
            s.remove_suffix(1);
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        if (s.empty())
            throw parse_error("empty matrix cell");
        if (s.back() != 'i')
            return {parse_double(s), 0.0};
        s.remove_suffix(1);
        std::size_t split = std::string_view::npos;
        for (std::size_t k = s.size(); k-- > 1;)
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
            {
                split = k;
                break;
            }
        if (split == std::string_view::npos)
            return {0.0, parse_double(s)};
        return {parse_double(s.substr(0, split)), parse_double(s.substr(split))};
    }

    // Real matrices as plain values, complex ones as "a+bi" cells; one row per line
    inline void write_matrix_csv(std::ostream &os, const Eigen::MatrixXcd &h)
    {
        const bool real = is_real(h);
        for (Eigen::Index r = 0; r < h.rows(); ++r)
        {
            for (Eigen::Index c = 0; c < h.cols(); ++c)
            {
                if (c)
                    os << ',';
                os << (real ? format_double(h(r, c).real()) : format_complex(h(r, c)));
            }
            os << '\n';
        }
    }

    inline Eigen::MatrixXcd read_matrix_csv(std::istream &is)
    {
        std::vector<std::vector<cplx>> rows;
        std::string line;
        while (std::getline(is, line))
        {
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            std::vector<cplx> row;
            std::string_view rest(line);
            while (true)
            {
                const auto comma = rest.find(',');
                row.push_back(parse_complex(rest.substr(0, comma)));
                if (comma == std::string_view::npos)
                    break;
                rest.remove_prefix(comma + 1);
            }
            if (!rows.empty() && row.size() != rows.front().size())
                throw parse_error("matrix CSV: ragged rows");
            rows.push_back(std::move(row));
        }
        if (rows.empty())
            throw parse_error("matrix CSV: no data");
        Eigen::MatrixXcd h(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        return h;
    }

    // Nested arrays of [re, im] pairs
    inline nlohmann::json matrix_to_json(const Eigen::MatrixXcd &h)
    {
        auto j = nlohmann::json::array();
        for (Eigen::Index r = 0; r < h.rows(); ++r)
        {
            auto row = nlohmann::json::array();
            for (Eigen::Index c = 0; c < h.cols(); ++c)
                row.push_back({h(r, c).real(), h(r, c).imag()});
            j.push_back(std::move(row));
        }
        return j;
    }

    inline Eigen::MatrixXcd matrix_from_json(const nlohmann::json &j)
    {
        if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
            throw parse_error("matrix JSON: expected a nonempty array of rows");
        const auto rows = j.size(), cols = j[0].size();
        Eigen::MatrixXcd h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (std::size_t r = 0; r < rows; ++r)
        {
            if (!j[r].is_array() || j[r].size() != cols)
                throw parse_error("matrix JSON: ragged rows");
            for (std::size_t c = 0; c < cols; ++c)
            {
                const auto &e = j[r][c];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                    throw parse_error("matrix JSON: each entry must be [re, im]");
                h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {e[0].get<double>(), e[1].get<double>()};
            }
        }
        return h;
    }

    // JSON if the text starts with '[', CSV otherwise
    inline Eigen::MatrixXcd parse_matrix_text(const std::string &text)
    {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '[')
            return matrix_from_json(parse_json_text(text));
        std::istringstream is(text);
        return read_matrix_csv(is);
    }

    // ---- analysis outputs --------------------------------------------------------------------

    inline void write_spectrum_csv(std::ostream &os, const SingularSpectrum &spec)
    {
        os << "index,sigma\n";
        for (std::size_t i = 0; i < spec.sigmas.size(); ++i)
            os << (i + 1) << ',' << format_double(spec.sigmas[i]) << '\n';
    }

    inline std::vector<double> read_spectrum_csv(std::istream &is)
    {
        std::vector<double> out;
        std::string line;
        if (!std::getline(is, line) || line.rfind("index,sigma", 0) != 0)
            throw parse_error("spectrum CSV: missing 'index,sigma' header");
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw parse_error("spectrum CSV: malformed row");
            out.push_back(parse_double(std::string_view(line).substr(comma + 1)));
        }
        return out;
    }

    inline void write_beampattern_csv(std::ostream &os, const BeampatternCurve &c)
    {
        os << "theta,B\n";
        for (std::size_t i = 0; i < c.thetas.size(); ++i)
            os << format_double(c.thetas[i]) << ',' << format_double(c.gains_db[i]) << '\n';
    }

    inline void write_coarray_csv(std::ostream &os, const SumCoarray &ca)
    {
        os << "sum,multiplicity\n";
        for (std::size_t i = 0; i < ca.sums.size(); ++i)
        {
            const auto &s = ca.sums[i];
            os << (is_integer(s) ? std::to_string(s.numerator()) : format_double(to_double(s)))
               << ',' << ca.multiplicities[i] << '\n';
        }
    }

    inline void write_coarray_scaling_csv(std::ostream &os, const std::vector<CoarrayScalingRow> &rows)
    {
        os << "N,contiguous_len,L\n";
        for (const auto &r : rows)
            os << r.n << ',' << r.contiguous_len << ',' << to_string(r.aperture) << '\n';
    }

    inline void write_sweep_csv(std::ostream &os, const SweepResult &res)
    {
        os << "N,L,family,spectral_norm,L_target,params,feasible\n";
        for (const auto &r : res.rows)
            os << r.n << ',' << to_string(r.l) << ',' << to_string(r.family) << ',' << format_double(r.spectral_norm)
               << ',' << format_double(r.l_target) << ',' << r.params.describe() << ',' << (r.feasible ? "yes" : "no") << '\n';
    }
}
