#include "polysat/frontend.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Word-level bit-vector solver"};
    std::string file;
    double timeout = 60;
    uint64_t max_conflicts = 1000000;
    std::string trace_path;
    bool oracle = false;
    unsigned oracle_bits = 24;
    uint64_t seed = 0;
    app.add_option("file", file, "SMT-LIB2 input")->required();
    app.add_option("--timeout", timeout, "wall-clock limit in seconds")->check(CLI::PositiveNumber);
    app.add_option("--max-conflicts", max_conflicts, "conflict limit");
    app.add_option("--trace", trace_path, "write a tab-separated event trace");
    app.add_flag("--oracle", oracle, "decide by exhaustive enumeration");
    app.add_option("--oracle-bits", oracle_bits, "largest total width the oracle accepts");
    app.add_option("--seed", seed, "random seed");
    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::ifstream in(file);
    if (!in) {
        std::cerr << "error: cannot open " << file << "\n";
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    std::ofstream trace;
    polysat::smt::RunOptions opts;
    opts.timeout = timeout;
    opts.max_conflicts = max_conflicts;
    opts.oracle = oracle;
    opts.oracle_bits = oracle_bits;
    opts.seed = seed;
    if (!trace_path.empty()) {
        trace.open(trace_path);
        if (!trace) {
            std::cerr << "error: cannot write " << trace_path << "\n";
            return 1;
        }
        opts.trace = &trace;
    }

    try {
        auto script = polysat::smt::parse(buf.str());
        auto verdict = polysat::smt::run_script(script, opts, std::cout);
        return verdict == polysat::Verdict::unknown ? 2 : 0;
    } catch (polysat::smt::input_error const& e) {
        std::cerr << "error: " << file << ":" << e.what() << "\n";
        return 1;
    } catch (polysat::usage_error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (std::runtime_error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
