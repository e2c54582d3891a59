// End-to-end checks for the qns binary: golden outputs, exit codes, and the
// reproducibility manifest. QNS_CLI_PATH is injected by the build.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

int failures = 0;

void expect(bool ok, const std::string& label) {
    std::cout << (ok ? "ok - " : "FAIL - ") << label << "\n";
    if (!ok) ++failures;
}

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr, interleaved
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(QNS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << cmd << "\n";
        std::exit(1);
    }
    RunResult result;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string sq(const std::string& s) { return "'" + s + "'"; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out.good()) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string last_line(const std::string& text) {
    const auto end = text.find_last_not_of('\n');
    if (end == std::string::npos) return "";
    const auto start = text.rfind('\n', end);
    return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += (c == '\n');
    return n;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

int main() {
    char tmpl[] = "/tmp/qns-cli-XXXXXX";
    const char* dir_c = mkdtemp(tmpl);
    if (!dir_c) {
        std::cerr << "mkdtemp failed\n";
        return 1;
    }
    const std::string dir = dir_c;

    const std::string swap_file = dir + "/swap.qns";
    write_file(swap_file,
               "dim = 2\n"
               "q = symbolic\n"
               "X[1] = y\n"
               "X[2] = x\n"
               "point = 1, -1\n");

    const std::string swap0_file = dir + "/swap0.qns";
    write_file(swap0_file,
               "dim = 2\n"
               "q = symbolic\n"
               "X[1] = y\n"
               "X[2] = x\n"
               "point = 0, 0\n");

    const std::string pair_file = dir + "/pair.qns";
    write_file(pair_file,
               "dim = 2\n"
               "X[1] = y\n"
               "X[2] = x\n"
               "Y[1] = x\n"
               "Y[2] = q*y\n");

    const std::string qswap_file = dir + "/qswap.qns";
    write_file(qswap_file,
               "dim = 2\n"
               "q = symbolic\n"
               "X[1] = y\n"
               "X[2] = q*x\n"
               "point = 1, 0\n");

    const std::string contraction_file = dir + "/contraction.qns";
    write_file(contraction_file,
               "dim = 2\n"
               "X[1] = -x\n"
               "X[2] = -y\n"
               "point = 0, 0\n");

    const std::string blowup_file = dir + "/blowup.qns";
    write_file(blowup_file,
               "dim = 1\n"
               "X[1] = x*x\n"
               "point = 1\n");

    const std::string polar_file = dir + "/polar.qns";
    write_file(polar_file,
               "dim = 2\n"
               "q = symbolic\n"
               "X[1] = q^-1*y\n"
               "X[2] = x\n"
               "point = 1, 0\n");

    // ---- version / help / argument errors ----------------------------------

    auto r = run("--version");
    expect(r.code == 0 && r.output == "0.1.0\n", "--version prints the version");

    r = run("--help");
    expect(r.code == 0 && contains(r.output, "quantum n-space toolkit"), "--help exits 0");

    r = run("");
    expect(r.code == 2, "no subcommand exits 2");

    r = run("frobnicate");
    expect(r.code == 2, "unknown subcommand exits 2");

    // ---- normalize ----------------------------------------------------------

    r = run("normalize " + sq("y*x"));
    expect(r.code == 0 && r.output == "q*x*y\n", "normalize reorders y*x");

    r = run("normalize " + sq("(1+q)(1-q)"));
    expect(r.code == 0 && r.output == "1 - q^2\n", "normalize multiplies juxtaposed factors");

    r = run("normalize --dim 3 " + sq("x3*x1"));
    expect(r.code == 0 && r.output == "q*x1*x3\n", "normalize handles indexed generators");

    r = run("normalize --q 1/2 " + sq("y*x"));
    expect(r.code == 0 && r.output == "1/2*x*y\n", "normalize evaluates q exactly");

    r = run("normalize --q 1.5 " + sq("y*x"));
    expect(r.code == 2 && contains(r.output, "BadQValue"), "q outside (0,1] exits 2");

    r = run("normalize --format yaml " + sq("x"));
    expect(r.code == 2, "unsupported format exits 2");

    r = run("normalize " + sq("x +"));
    expect(r.code == 2 && contains(r.output, "line 1"), "parse errors exit 2 with a position");

    r = run("normalize --format json " + sq("y*x"));
    expect(r.code == 0 && contains(r.output, "\"canonical\": \"q*x*y\""), "normalize --format json");

    // ---- validate / bracket -------------------------------------------------

    r = run("validate " + sq(swap_file));
    expect(r.code == 0 &&
               r.output == "strict_ok: false\nresidual[1,2]: (1 - q^2)*x*y\n",
           "validate reports the swap residual");

    r = run("validate --format json " + sq(swap_file));
    expect(r.code == 0 && contains(r.output, "\"strict_ok\": false") &&
               contains(r.output, "(1 - q^2)*x*y"),
           "validate --format json");

    r = run("validate /no/such/file.qns");
    expect(r.code == 1, "missing input exits 1");

    r = run("bracket " + sq(pair_file));
    expect(r.code == 0 && r.output == "(1 - q)*y\n", "bracket on the default probe");

    r = run("bracket --probe " + sq("x*y") + " " + sq(pair_file));
    expect(r.code == 0, "bracket accepts a probe expression");

    r = run("bracket " + sq(swap_file));
    expect(r.code == 2 && contains(r.output, "second field"), "bracket without Y exits 2");

    // ---- simulate -----------------------------------------------------------

    r = run("simulate " + sq(swap_file));
    expect(r.code == 0 && r.output.rfind("t,x1,x2\n0,1,-1\n", 0) == 0,
           "simulate emits the grid from the initial point");
    expect(last_line(r.output) == "1,0.36787944120235549,-0.36787944120235549",
           "simulate reproduces the decay endpoint");
    expect(line_count(r.output) == 102, "simulate has one row per grid sample");

    r = run("simulate --T 0 " + sq(swap_file));
    expect(r.code == 0 && r.output == "t,x1,x2\n0,1,-1\n", "zero horizon keeps one sample");

    const auto euler = run("simulate --method euler " + sq(swap_file));
    expect(euler.code == 0 && euler.output != run("simulate " + sq(swap_file)).output,
           "euler and rk4 disagree");

    r = run("simulate --method frog " + sq(swap_file));
    expect(r.code == 2, "unknown method exits 2");

    r = run("simulate --T 2 " + sq(blowup_file));
    expect(r.code == 3 && contains(r.output, "NonFiniteState"), "divergence exits 3");

    r = run("simulate --format json " + sq(swap_file));
    expect(r.code == 0 && contains(r.output, "\"method\": \"rk4\""), "simulate --format json");

    // ---- equilibria -----------------------------------------------------------

    r = run("equilibria " + sq(swap_file));
    expect(r.code == 0 && r.output.rfind("x1,x2,residual\n", 0) == 0 &&
               contains(r.output, "0,0,0"),
           "equilibria finds the origin");

    r = run("equilibria --format json " + sq(swap_file));
    expect(r.code == 0 && contains(r.output, "\"skipped_seeds\""), "equilibria --format json");

    r = run("equilibria --box 1,2,3 " + sq(swap_file));
    expect(r.code == 2, "odd box list exits 2");

    // ---- stability ------------------------------------------------------------

    const std::string stab_out = dir + "/stab.json";
    r = run("stability --out " + sq(stab_out) + " " + sq(contraction_file));
    expect(r.code == 0, "stability probe runs");
    {
        const auto j = nlohmann::json::parse(read_file(stab_out));
        expect(j.at("outcomes")[0].at("delta_estimate") == 0.1 &&
                   j.at("outcomes")[1].at("delta_estimate") == 0.01,
               "contraction: delta equals epsilon");
        expect(j.at("class") == "asymptotically-stable", "contraction classifies as stable");
    }

    r = run("stability --format text --out " + sq(dir + "/stab.txt") + " " + sq(swap0_file));
    expect(r.code == 0, "stability text format runs");
    {
        const std::string text = read_file(dir + "/stab.txt");
        expect(contains(text, "unstable witness at t=4.61") &&
                   contains(text, "class: unstable") && contains(text, "note: "),
               "swap system: witness, class and note in text output");
    }

    r = run("stability --epsilons 0.01,0.1 " + sq(contraction_file));
    expect(r.code == 2, "ascending epsilons exit 2");

    // ---- limit ----------------------------------------------------------------

    r = run("limit " + sq(qswap_file));
    expect(r.code == 0 &&
               r.output.rfind("q0,x1,x2,dist_to_qmin,dist_to_classical,dist_to_limit\n", 0) == 0,
           "limit emits the sweep header");
    expect(contains(r.output,
                    "0.5,1.2605918365213544,0.54272082063630189,0.53270414563431745,"
                    "0.63248037300748594,0.54272082063630189"),
           "limit reproduces the q=1/2 row");

    r = run("limit " + sq(polar_file));
    expect(r.code == 0 && contains(r.output, "limit system unavailable"),
           "a pole at q=0 is reported but not fatal");

    r = run("limit --q-list 0.1,0.5 " + sq(qswap_file));
    expect(r.code == 2 && contains(r.output, "BadQValue"), "non-descending q list exits 2");

    // ---- reproducibility manifest ----------------------------------------------

    const std::string out_a = dir + "/a.csv";
    r = run("simulate --out " + sq(out_a) + " " + sq(swap_file));
    expect(r.code == 0 && r.output.empty(), "simulate --out is silent on stdout");
    const std::string csv_first = read_file(out_a);
    const std::string manifest_first = read_file(out_a + ".manifest.json");
    expect(!csv_first.empty() && !manifest_first.empty(), "output and manifest are written");

    r = run("simulate --out " + sq(out_a) + " " + sq(swap_file));
    expect(r.code == 0 && read_file(out_a) == csv_first &&
               read_file(out_a + ".manifest.json") == manifest_first,
           "rerunning reproduces output and manifest byte for byte");

    {
        const auto m = nlohmann::json::parse(manifest_first);
        expect(m.at("command") == "simulate" && m.at("format") == "csv" &&
                   m.at("version") == "0.1.0" && m.at("seed") == 42 &&
                   m.at("config").at("step") == 0.01,
               "manifest records the resolved run");
    }

    r = run("stability --seed 7 --out " + sq(dir + "/s7.json") + " " + sq(contraction_file));
    expect(r.code == 0, "stability accepts a seed");
    {
        const auto m = nlohmann::json::parse(read_file(dir + "/s7.json.manifest.json"));
        expect(m.at("seed") == 7, "the seed lands in the manifest");
        const auto j = nlohmann::json::parse(read_file(dir + "/s7.json"));
        expect(j.at("seed") == 7, "the seed lands in the report");
    }

    std::cout << (failures ? "FAILED" : "all passed") << " (" << failures << " failures)\n";
    return failures ? 1 : 0;
}
