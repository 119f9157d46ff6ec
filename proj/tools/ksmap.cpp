#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ksmap/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Gauss-Manin, Kodaira-Spencer and monodromy analysis of hyperelliptic pencils"};
    std::string command, file, out;
    ksmap::RunOptions opts;
    double tol = 0.0;
    int truncation = 0, degree_bound = -1, samples = 0;
    app.add_option("command", command, "analyze | gm | ks | ranks | pairing | monodromy | independence | decompose")
        ->required();
    app.add_option("file", file, "pencil definition file")->required();
    app.add_option("--out", out, "write the report to PATH instead of standard output");
    auto* tol_opt = app.add_option("--tol", tol, "step tolerance (default 1e-10)");
    auto* trunc_opt = app.add_option("--truncation", truncation, "Laurent truncation order at infinity");
    auto* deg_opt = app.add_option("--degree-bound", degree_bound, "degree bound D of the independence test (default 3)");
    auto* samp_opt = app.add_option("--samples", samples, "sample count of the independence test (default 200)");
    app.add_option("--seed", opts.seed, "seed for random specialization points");
    app.add_option("--stage", opts.stage, "restrict analyze to one stage");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ksmap::kExitInput;
    }
    if (*tol_opt) opts.tol = tol;
    if (*trunc_opt) opts.truncation = truncation;
    if (*deg_opt) opts.degree_bound = degree_bound;
    if (*samp_opt) opts.samples = samples;

    const ksmap::RunResult res = ksmap::run_file(command, file, opts);
    const std::string text = res.report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out);
        if (!os) {
            std::cerr << "cannot write " << out << "\n";
            return ksmap::kExitInput;
        }
        os << text;
    }
    if (res.exit_code != 0) std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
    return res.exit_code;
}
