#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

namespace testsupport {

struct CliResult {
    int status;
    std::string out;
};

inline std::string cli_path() {
    const char* env = std::getenv("FROBSTAB_CLI");
    return env ? std::string(env) : std::string();
}

// Runs the CLI under test via the shell. Arguments are test-authored
// literals, so plain concatenation is safe here.
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string path = cli_path();
    if (path.empty()) throw std::runtime_error("FROBSTAB_CLI is not set");
    const std::string cmd =
        "'" + path + "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int rc = ::pclose(pipe);
    const int status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return {status, out};
}

// Fixed-name scratch files are fine: the test binary runs single-process.
inline std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/frobstab_test_" + name;
    std::ofstream out(path);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
    return path;
}

} // namespace testsupport
