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

// fdsi command-line front end. Every command is deterministic; outputs go to --output or stdout.
//
// Exit status: 0 success, 2 bad flags / unreadable input / invalid parameters,
//              3 colocated Tx/Rx antenna, 4 numerical failure.

#include <fdsi/fdsi.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_usage = 2;
    constexpr int exit_singular = 3;
    constexpr int exit_numerical = 4;

    // Reports a diagnostic naming the offending flag
    class usage_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    std::string read_input(const std::string &path)
    {
        if (path == "-")
        {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            return ss.str();
        }
        return fdsi::io::read_file(path);
    }

    void emit(const std::string &path, const std::string &content)
    {
        if (path.empty() || path == "-")
        {
            std::cout << content;
            std::cout.flush();
            return;
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw fdsi::parse_error("cannot write '" + path + "'");
        out << content;
    }

    template <class Fn>
    std::string render(Fn &&fn)
    {
        std::ostringstream ss;
        fn(ss);
        return ss.str();
    }

    fdsi::FullDuplexLayout load_layout(const std::string &path)
    {
        return fdsi::io::layout_from_json(fdsi::io::parse_json_text(read_input(path)));
    }

    std::vector<std::size_t> n_range(std::size_t lo, std::size_t hi, std::size_t step)
    {
        if (step == 0)
            throw usage_error("--n-step: must be at least 1");
        if (lo == 0 || hi < lo)
            throw usage_error("--n-min/--n-max: need 1 <= n-min <= n-max");
        std::vector<std::size_t> ns;
        for (std::size_t n = lo; n <= hi; n += step)
            ns.push_back(n);
        return ns;
    }

    fdsi::ApertureRule make_rule(const std::string &kind, std::optional<double> c)
    {
        if (kind == "linear")
            return fdsi::ApertureRule::linear(c.value_or(2.0));
        if (kind == "quadratic")
            return fdsi::ApertureRule::quadratic(c.value_or(0.26));
        if (kind == "constant")
        {
            if (!c)
                throw usage_error("--c: required for the constant aperture rule");
            return fdsi::ApertureRule::constant(*c);
        }
        throw usage_error("--rule: expected linear, quadratic or constant");
    }

    struct GeometryOpts
    {
        std::string family;
        std::optional<std::size_t> n, m1, m2;
        std::optional<std::int64_t> delta1, delta2, delta3;
        std::string label;
        std::string output;
    };

    template <class T>
    T need(const std::optional<T> &v, const char *flag, const std::string &family)
    {
        if (!v)
            throw usage_error(std::string(flag) + ": required for --family " + family);
        return *v;
    }

    int cmd_geometry(const GeometryOpts &o)
    {
        fdsi::FullDuplexLayout layout = [&]
        {
            if (o.family == "partitioned")
                return fdsi::generate_partitioned(need(o.n, "--n", o.family), need(o.delta1, "--delta1", o.family));
            if (o.family == "interleaved")
                return fdsi::generate_interleaved(need(o.n, "--n", o.family), need(o.delta2, "--delta2", o.family));
            if (o.family == "nested")
                return fdsi::generate_nested(need(o.m1, "--m1", o.family), need(o.m2, "--m2", o.family),
                                             need(o.delta3, "--delta3", o.family));
            throw usage_error("--family: expected partitioned, interleaved or nested");
        }();
        if (!o.label.empty())
            layout.label = o.label;

        emit(o.output, render([&](std::ostream &os)
                              { fdsi::io::write_layout(os, layout); }));
        // keep stdout clean for piping when the JSON goes there
        auto &sk = (o.output.empty() || o.output == "-") ? std::cerr : std::cout;
        sk << fdsi::sketch(layout) << '\n';
        return exit_ok;
    }

    struct SiOpts
    {
        std::string geometry;
        double rho = 1.0;
        std::string format = "csv";
        std::string output;
    };

    int cmd_si(const SiOpts &o)
    {
        if (o.format != "csv" && o.format != "json")
            throw usage_error("--format: expected csv or json");
        const auto si = fdsi::si_matrix(load_layout(o.geometry), o.rho);
        emit(o.output, render([&](std::ostream &os)
                              {
            if (o.format == "csv")
                fdsi::io::write_matrix_csv(os, si.h);
            else
                os << fdsi::io::matrix_to_json(si.h).dump() << '\n'; }));
        return exit_ok;
    }

    struct SvdOpts
    {
        std::string input;
        double rho = 1.0;
        std::string output;
    };

    int cmd_svd(const SvdOpts &o)
    {
        const std::string text = read_input(o.input);
        const auto first = text.find_first_not_of(" \t\r\n");
        Eigen::MatrixXcd h;
        if (first != std::string::npos && text[first] == '{')
            h = fdsi::si_matrix(fdsi::io::layout_from_json(fdsi::io::parse_json_text(text)), o.rho).h;
        else
            h = fdsi::io::parse_matrix_text(text);
        const auto spec = fdsi::svd_spectrum(h);
        emit(o.output, render([&](std::ostream &os)
                              { fdsi::io::write_spectrum_csv(os, spec); }));
        return exit_ok;
    }

    struct BeamOpts
    {
        std::string geometry;
        std::string side = "rx";
        double theta_s = 0.0;
        std::size_t grid = fdsi::default_grid_size;
        bool normalized = false;
        std::string output;
    };

    int cmd_beampattern(const BeamOpts &o)
    {
        if (o.side != "rx" && o.side != "tx")
            throw usage_error("--side: expected rx or tx");
        if (o.grid < 3)
            throw usage_error("--grid: must be at least 3");
        const auto layout = load_layout(o.geometry);
        const auto curve = fdsi::beampattern(o.side == "rx" ? layout.rx : layout.tx, o.theta_s, o.grid, o.normalized);
        emit(o.output, render([&](std::ostream &os)
                              { fdsi::io::write_beampattern_csv(os, curve); }));
        return exit_ok;
    }

    struct CoarrayOpts
    {
        std::string geometry;
        bool scaling = false;
        std::size_t n_min = 10, n_max = 60, n_step = 1;
        std::string rule = "quadratic";
        std::optional<double> c;
        std::string output;
    };

    int cmd_coarray(const CoarrayOpts &o)
    {
        if (o.scaling)
        {
            const auto rows = fdsi::coarray_scaling(n_range(std::max<std::size_t>(o.n_min, 2), o.n_max, o.n_step), make_rule(o.rule, o.c));
            emit(o.output, render([&](std::ostream &os)
                                  { fdsi::io::write_coarray_scaling_csv(os, rows); }));
            return exit_ok;
        }
        if (o.geometry.empty())
            throw usage_error("--geometry: required unless --scaling is given");
        const auto ca = fdsi::sum_coarray(load_layout(o.geometry));
        emit(o.output, render([&](std::ostream &os)
                              { fdsi::io::write_coarray_csv(os, ca); }));
        return exit_ok;
    }

    struct SweepOpts
    {
        std::string family = "all";
        std::string rule = "quadratic";
        std::optional<double> c;
        std::size_t n_min = 10, n_max = 100, n_step = 10;
        double rho = 1.0;
        std::string output;
    };

    int cmd_sweep(const SweepOpts &o)
    {
        std::vector<fdsi::Family> fams;
        if (o.family == "all")
            fams = {fdsi::Family::partitioned, fdsi::Family::interleaved, fdsi::Family::nested};
        else
        {
            try
            {
                fams = {fdsi::family_from_string(o.family)};
            }
            catch (const fdsi::invalid_parameter &)
            {
                throw usage_error("--family: expected partitioned, interleaved, nested or all");
            }
        }
        auto ns = n_range(o.n_min, o.n_max, o.n_step);
        if (std::find(fams.begin(), fams.end(), fdsi::Family::nested) != fams.end() && ns.front() < 2)
            throw usage_error("--n-min: nested arrays need n >= 2");
        const auto res = fdsi::scaling_sweep(fams, ns, make_rule(o.rule, o.c), o.rho);
        emit(o.output, render([&](std::ostream &os)
                              { fdsi::io::write_sweep_csv(os, res); }));
        return exit_ok;
    }

    struct CompareOpts
    {
        double rho = 0.2;
        std::size_t grid = fdsi::default_grid_size;
        std::string out_dir;
    };

    int cmd_compare(const CompareOpts &o)
    {
        if (o.grid < 3)
            throw usage_error("--grid: must be at least 3");
        namespace fs = std::filesystem;
        fs::create_directories(o.out_dir);
        for (const auto &st : fdsi::comparison_study(o.rho, o.grid))
        {
            const std::string name(fdsi::to_string(st.family));
            const fs::path dir(o.out_dir);
            emit((dir / ("geometry_" + name + ".json")).string(), render([&](std::ostream &os)
                                                                       { fdsi::io::write_layout(os, st.layout); }));
            emit((dir / ("beampattern_" + name + ".csv")).string(), render([&](std::ostream &os)
                                                                          { fdsi::io::write_beampattern_csv(os, st.rx_beampattern); }));
            emit((dir / ("spectrum_" + name + ".csv")).string(), render([&](std::ostream &os)
                                                                       { fdsi::io::write_spectrum_csv(os, st.spectrum); }));
        }
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"fdsi: full-duplex array geometry and self-interference toolkit\n"
                 "exit status: 0 ok, 2 usage/parse error, 3 colocated Tx/Rx antennas, 4 numerical failure"};
    app.require_subcommand(1);

    GeometryOpts go;
    auto *geo = app.add_subcommand("geometry", "Generate a partitioned, interleaved or nested layout as JSON");
    geo->add_option("--family", go.family, "partitioned | interleaved | nested")->required();
    geo->add_option("--n", go.n, "Antennas per side (partitioned, interleaved)");
    geo->add_option("--delta1", go.delta1, "Partitioned gap (>= 0)");
    geo->add_option("--delta2", go.delta2, "Interleaved spacing (>= 1)");
    geo->add_option("--m1", go.m1, "Nested dense count (>= 1)");
    geo->add_option("--m2", go.m2, "Nested sparse count (>= 1)");
    geo->add_option("--delta3", go.delta3, "Nested sparse spacing factor (>= 1)");
    geo->add_option("--label", go.label, "Override the layout label");
    geo->add_option("-o,--output", go.output, "Output file (default stdout)");

    SiOpts so;
    auto *si = app.add_subcommand("si", "SI channel matrix of a geometry file");
    si->add_option("-g,--geometry", so.geometry, "Geometry JSON ('-' for stdin)")->required();
    si->add_option("--rho", so.rho, "Positive scale factor")->capture_default_str();
    si->add_option("--format", so.format, "csv | json")->capture_default_str();
    si->add_option("-o,--output", so.output, "Output file (default stdout)");

    SvdOpts vo;
    auto *svd = app.add_subcommand("svd", "Singular values of a matrix file or of a geometry's SI matrix");
    svd->add_option("-i,--input", vo.input, "Geometry JSON, matrix CSV or matrix JSON ('-' for stdin)")->required();
    svd->add_option("--rho", vo.rho, "Scale factor when the input is a geometry")->capture_default_str();
    svd->add_option("-o,--output", vo.output, "Output file (default stdout)");

    BeamOpts bo;
    auto *bp = app.add_subcommand("beampattern", "Array factor in dB of the Rx or Tx side of a geometry");
    bp->add_option("-g,--geometry", bo.geometry, "Geometry JSON ('-' for stdin)")->required();
    bp->add_option("--side", bo.side, "rx | tx")->capture_default_str();
    bp->add_option("--theta-s", bo.theta_s, "Steering angle in radians")->capture_default_str();
    bp->add_option("--grid", bo.grid, "Number of angle samples over [-pi/2, pi/2]")->capture_default_str();
    bp->add_flag("--normalized", bo.normalized, "Normalize the peak to 0 dB");
    bp->add_option("-o,--output", bo.output, "Output file (default stdout)");

    CoarrayOpts co;
    auto *ca = app.add_subcommand("coarray", "Sum co-array of a geometry, or nested contiguous-length scaling table");
    ca->add_option("-g,--geometry", co.geometry, "Geometry JSON ('-' for stdin)");
    ca->add_flag("--scaling", co.scaling, "Tabulate contiguous length of the nested array against N");
    ca->add_option("--n-min", co.n_min)->capture_default_str();
    ca->add_option("--n-max", co.n_max)->capture_default_str();
    ca->add_option("--n-step", co.n_step)->capture_default_str();
    ca->add_option("--rule", co.rule, "linear | quadratic | constant")->capture_default_str();
    ca->add_option("--c", co.c, "Aperture rule coefficient (default 2 linear, 0.26 quadratic)");
    ca->add_option("-o,--output", co.output, "Output file (default stdout)");

    SweepOpts wo;
    auto *sw = app.add_subcommand("sweep", "Spectral norm against N under an aperture scaling rule");
    sw->add_option("--family", wo.family, "partitioned | interleaved | nested | all")->capture_default_str();
    sw->add_option("--rule", wo.rule, "linear | quadratic | constant")->capture_default_str();
    sw->add_option("--c", wo.c, "Aperture rule coefficient (default 2 linear, 0.26 quadratic)");
    sw->add_option("--n-min", wo.n_min)->capture_default_str();
    sw->add_option("--n-max", wo.n_max)->capture_default_str();
    sw->add_option("--n-step", wo.n_step)->capture_default_str();
    sw->add_option("--rho", wo.rho)->capture_default_str();
    sw->add_option("-o,--output", wo.output, "Output file (default stdout)");

    CompareOpts fo;
    auto *f2 = app.add_subcommand("compare", "N=11 three-family study bundle: geometry JSON, Rx beampattern CSV, spectrum CSV");
    f2->add_option("--rho", fo.rho)->capture_default_str();
    f2->add_option("--grid", fo.grid)->capture_default_str();
    f2->add_option("-d,--out-dir", fo.out_dir, "Bundle directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*geo)
            return cmd_geometry(go);
        if (*si)
            return cmd_si(so);
        if (*svd)
            return cmd_svd(vo);
        if (*bp)
            return cmd_beampattern(bo);
        if (*ca)
            return cmd_coarray(co);
        if (*sw)
            return cmd_sweep(wo);
        if (*f2)
            return cmd_compare(fo);
    }
    catch (const usage_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const fdsi::colocated_antennas &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_singular;
    }
    catch (const fdsi::numerical_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const std::exception &e)
    {
        // parse_error, invalid_parameter, dimension_mismatch, filesystem errors
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
