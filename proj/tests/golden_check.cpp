// Byte-compares the CLI's machine-readable output against the stored golden
// fixtures, then exercises --golden regeneration into a scratch directory and
// checks it reproduces the stored bytes exactly.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string cli_path() {
    const char* v = std::getenv("CONFTC_CLI");
    return v ? v : "./conftc";
}

std::string repo_root() {
    const char* v = std::getenv("CONFTC_ROOT");
    return v ? v : ".";
}

int run_cli(const std::string& args, std::string& out) {
    std::string cmd = "'" + cli_path() + "' " + args + " 2>&1";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f)
        return -1;
    out.clear();
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, f)) > 0)
        out.append(buf, got);
    int status = pclose(f);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "<unreadable: " + path + ">";
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Fixture {
    const char* name;
    const char* args;
};

}  // namespace

int main() {
    const std::vector<Fixture> fixtures = {
        {"reduce_arnold.json", "reduce --json --m 3 --n 3 'A[3,2]*A[3,1]'"},
        {"certify_pi_m3n2s2.json", "certify pi --json --m 3 --n 2 --s 2"},
        {"certify_mu_s_m2n3s2.json", "certify mu_s --json --m 2 --n 3 --s 2"},
        {"certify_nu_s_m2n2p2s2.json", "certify nu_s --json --m 2 --n 2 --p 2 --s 2"},
    };

    int failures = 0;
    std::string golden_dir = repo_root() + "/tests/golden/";
    for (const Fixture& fx : fixtures) {
        std::string out;
        int code = run_cli(fx.args, out);
        std::string want = slurp(golden_dir + fx.name);
        if (code != 0 || out != want) {
            std::cout << "MISMATCH " << fx.name << " (exit " << code << ")\n";
            std::cout << "--- live ---\n" << out << "--- stored ---\n" << want;
            ++failures;
        } else {
            std::cout << "ok " << fx.name << "\n";
        }
    }

    // regeneration must reproduce the stored bytes
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "conftc_golden_regen";
    std::filesystem::remove_all(tmp);
    std::filesystem::create_directories(tmp);
    std::string out;
    int code = run_cli("--golden '" + tmp.string() + "'", out);
    if (code != 0) {
        std::cout << "MISMATCH --golden exited " << code << ": " << out;
        ++failures;
    } else {
        for (const Fixture& fx : fixtures) {
            std::string regen = slurp((tmp / fx.name).string());
            std::string want = slurp(golden_dir + fx.name);
            if (regen != want) {
                std::cout << "MISMATCH regenerated " << fx.name << "\n";
                ++failures;
            } else {
                std::cout << "ok regenerated " << fx.name << "\n";
            }
        }
    }
    std::filesystem::remove_all(tmp);
    return failures == 0 ? 0 : 1;
}
