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

// Runs the fdsi executable from tests. FDSI_CLI is the absolute path of the built tool.

#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef FDSI_CLI
#error "FDSI_CLI must be defined"
#endif

namespace test_cli
{
    inline std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    class Workdir
    {
    public:
        explicit Workdir(const std::string &tag)
            : dir_(std::filesystem::temp_directory_path() / ("fdsi_" + tag + "_" + std::to_string(::getpid())))
        {
            std::filesystem::remove_all(dir_);
            std::filesystem::create_directories(dir_);
        }
        ~Workdir() { std::filesystem::remove_all(dir_); }
        Workdir(const Workdir &) = delete;
        Workdir &operator=(const Workdir &) = delete;

        std::string path(const std::string &name) const { return (dir_ / name).string(); }

    private:
        std::filesystem::path dir_;
    };

    struct Result
    {
        int status;
        std::string out;
        std::string err;
    };

    // args are passed through the shell, so redirections like "< file" work
    inline Result run(const std::string &args)
    {
        Workdir io("run");
        const auto out = io.path("stdout"), err = io.path("stderr");
        const std::string cmd = std::string("\"") + FDSI_CLI + "\" " + args + " > \"" + out + "\" 2> \"" + err + "\"";
        const int raw = std::system(cmd.c_str());
        const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        return {status, slurp(out), slurp(err)};
    }
}
