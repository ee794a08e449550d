// Copyright 2026 The cliffsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cliffsat/cnf.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "cliffsat/errors.h"

extern char **environ;

namespace cliffsat {

Lit CnfFormula::new_vars(int32_t count) {
    if (count <= 0) {
        throw std::invalid_argument("new_vars needs a positive count");
    }
    Lit first = num_vars_ + 1;
    num_vars_ += count;
    return first;
}

void CnfFormula::add_clause(std::span<const Lit> lits) {
    for (Lit l : lits) {
        if (l == 0 || std::abs(l) > num_vars_) {
            throw RangeError("literal " + std::to_string(l) + " outside 1.." + std::to_string(num_vars_));
        }
    }
    starts_.push_back(lits_.size());
    lits_.insert(lits_.end(), lits.begin(), lits.end());
}

std::span<const Lit> CnfFormula::clause(size_t k) const {
    size_t b = starts_[k];
    size_t e = k + 1 < starts_.size() ? starts_[k + 1] : lits_.size();
    return {lits_.data() + b, e - b};
}

void CnfFormula::write_dimacs(std::ostream &out) const {
    out << "p cnf " << num_vars_ << " " << num_clauses() << "\n";
    std::string line;
    for (size_t k = 0; k < num_clauses(); k++) {
        line.clear();
        for (Lit l : clause(k)) {
            line += std::to_string(l);
            line += ' ';
        }
        line += "0\n";
        out << line;
    }
}

std::string CnfFormula::to_dimacs() const {
    std::ostringstream out;
    write_dimacs(out);
    return out.str();
}

void at_least_one(CnfFormula &f, std::span<const Lit> lits) {
    f.add_clause(lits);
}

void at_most_one(CnfFormula &f, std::span<const Lit> lits) {
    size_t m = lits.size();
    if (m <= 1) {
        return;
    }
    // s_k <=> "some literal among lits[0..k] is true", for k < m-1.
    Lit s = f.new_vars(static_cast<int32_t>(m - 1));
    f.add_clause({-lits[0], s});
    for (size_t k = 1; k + 1 < m; k++) {
        Lit prev = s + static_cast<Lit>(k) - 1;
        Lit cur = s + static_cast<Lit>(k);
        f.add_clause({-lits[k], cur});
        f.add_clause({-prev, cur});
        f.add_clause({-lits[k], -prev});
    }
    f.add_clause({-lits[m - 1], -(s + static_cast<Lit>(m) - 2)});
}

void exactly_one(CnfFormula &f, std::span<const Lit> lits) {
    if (lits.empty()) {
        throw std::invalid_argument("exactly_one over an empty literal list");
    }
    at_least_one(f, lits);
    at_most_one(f, lits);
}

void link_equiv(CnfFormula &f, Lit p, Lit q) {
    f.add_clause({-p, q});
    f.add_clause({p, -q});
}

void link_xor3(CnfFormula &f, Lit p, Lit q, Lit r) {
    f.add_clause({-p, -q, r});
    f.add_clause({-p, q, -r});
    f.add_clause({p, q, r});
    f.add_clause({p, -q, -r});
}

const char *status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::SAT:
            return "SAT";
        case SolveStatus::UNSAT:
            return "UNSAT";
        case SolveStatus::TIMEOUT:
            return "TIMEOUT";
    }
    return "?";
}

std::vector<std::string> SolverConfig::split_command(const std::string &cmd) {
    std::istringstream in(cmd);
    return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

namespace {

std::atomic<uint64_t> file_counter{0};

struct ScratchFiles {
    std::filesystem::path cnf, out;
    bool keep;
    ~ScratchFiles() {
        if (!keep) {
            std::error_code ec;
            std::filesystem::remove(cnf, ec);
            std::filesystem::remove(out, ec);
        }
    }
};

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string clip(const std::string &s) {
    return s.size() > 2000 ? s.substr(0, 2000) + "..." : s;
}

/// Waits for `pid` up to `seconds`. Returns true and fills status if it exited.
bool wait_with_timeout(pid_t pid, double seconds, int &status) {
    int pidfd = static_cast<int>(syscall(SYS_pidfd_open, pid, 0));
    auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(seconds);
    while (true) {
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            if (pidfd >= 0) {
                close(pidfd);
            }
            return true;
        }
        if (r < 0 && errno != EINTR) {
            if (pidfd >= 0) {
                close(pidfd);
            }
            throw EnvironmentError(std::string("waitpid failed: ") + std::strerror(errno));
        }
        auto now = std::chrono::steady_clock::now();
        if (std::isfinite(seconds) && now >= deadline) {
            if (pidfd >= 0) {
                close(pidfd);
            }
            return false;
        }
        int ms = 50;
        if (std::isfinite(seconds)) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
            ms = static_cast<int>(std::max<int64_t>(1, std::min<int64_t>(left, 50)));
        }
        if (pidfd >= 0) {
            pollfd p{pidfd, POLLIN, 0};
            poll(&p, 1, ms);
        } else {
            usleep(static_cast<useconds_t>(std::min(ms, 2)) * 1000);
        }
    }
}

SolverResult parse_solver_output(const std::string &text, int exit_code, int32_t num_vars) {
    SolverResult res;
    bool have_status = false;
    bool sat = false;
    std::vector<bool> model(static_cast<size_t>(num_vars) + 1, false);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("s ", 0) == 0) {
            std::string word = line.substr(2);
            while (!word.empty() && std::isspace(static_cast<unsigned char>(word.back()))) {
                word.pop_back();
            }
            if (word == "SATISFIABLE") {
                have_status = true;
                sat = true;
            } else if (word == "UNSATISFIABLE") {
                have_status = true;
                sat = false;
            } else if (word == "UNKNOWN") {
                res.status = SolveStatus::TIMEOUT;
                return res;
            } else {
                throw ProtocolError("unrecognized status line '" + line + "'");
            }
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream vs(line.substr(1));
            std::string tok;
            while (vs >> tok) {
                long long v;
                try {
                    size_t used = 0;
                    v = std::stoll(tok, &used);
                    if (used != tok.size()) {
                        throw std::invalid_argument(tok);
                    }
                } catch (const std::exception &) {
                    throw ProtocolError("bad token '" + tok + "' in model line");
                }
                if (v == 0) {
                    continue;
                }
                if (std::llabs(v) > num_vars) {
                    throw ProtocolError("model mentions variable " + tok + " beyond " + std::to_string(num_vars));
                }
                model[static_cast<size_t>(std::llabs(v))] = v > 0;
            }
        }
    }
    if (!have_status) {
        if (exit_code == 10 || exit_code == 20) {
            throw ProtocolError("solver exited with code " + std::to_string(exit_code) + " but printed no 's' line");
        }
        throw ProtocolError("solver output has no status line");
    }
    if ((exit_code == 10 && !sat) || (exit_code == 20 && sat)) {
        throw ProtocolError("solver exit code " + std::to_string(exit_code) + " contradicts its status line");
    }
    res.status = sat ? SolveStatus::SAT : SolveStatus::UNSAT;
    if (sat) {
        res.model = std::move(model);
    }
    return res;
}

}  // namespace

SolverResult solve(const CnfFormula &f, const SolverConfig &config, double time_limit) {
    if (config.command.empty()) {
        throw EnvironmentError("no SAT solver command configured");
    }
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::filesystem::path dir = config.scratch_dir.empty() ? std::filesystem::temp_directory_path() : config.scratch_dir;
    std::filesystem::create_directories(dir);
    std::string stem = "cliffsat-" + std::to_string(getpid()) + "-" + std::to_string(file_counter++);
    ScratchFiles files{dir / (stem + ".cnf"), dir / (stem + ".out"), config.keep_files};
    {
        std::ofstream out(files.cnf, std::ios::binary);
        if (!out) {
            throw EnvironmentError("cannot write " + files.cnf.string());
        }
        f.write_dimacs(out);
        if (!out) {
            throw EnvironmentError("failed writing " + files.cnf.string());
        }
    }

    std::vector<std::string> args = config.command;
    args.push_back(files.cnf.string());
    std::vector<char *> argv;
    for (auto &a : args) {
        argv.push_back(a.data());
    }
    argv.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, files.out.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    pid_t pid;
    int rc = posix_spawnp(&pid, argv[0], &actions, &attr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) {
        throw EnvironmentError("cannot start solver '" + args[0] + "': " + std::strerror(rc));
    }

    int status = 0;
    double budget = time_limit - elapsed();
    bool exited = budget > 0 && wait_with_timeout(pid, budget, status);
    if (!exited) {
        kill(-pid, SIGKILL);
        kill(pid, SIGKILL);
        waitpid(pid, &status, 0);
        SolverResult res;
        res.status = SolveStatus::TIMEOUT;
        res.wall_time = elapsed();
        return res;
    }

    std::string text = read_file(files.out);
    if (!WIFEXITED(status)) {
        throw EnvironmentError(
            "solver '" + args[0] + "' terminated by signal " + std::to_string(WTERMSIG(status)) + "\n" + clip(text));
    }
    int code = WEXITSTATUS(status);
    if (code == 127) {
        throw EnvironmentError("solver '" + args[0] + "' could not be executed\n" + clip(text));
    }
    if (code != 0 && code != 10 && code != 20) {
        throw EnvironmentError("solver '" + args[0] + "' exited with code " + std::to_string(code) + "\n" + clip(text));
    }
    SolverResult res = parse_solver_output(text, code, f.num_vars());
    res.wall_time = elapsed();
    return res;
}

}  // namespace cliffsat
