// Acceptance gate: runs the thirteen verification criteria and prints one
// line per criterion.  Exit status 0 only when every criterion passes.
//
//   gv4_acceptance [--data DIR] [--threads N]

#include "gv4/verify.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#ifndef GV4_DATA_DIR
#define GV4_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
    gv4::VerifyOptions opt;
    opt.data_dir = GV4_DATA_DIR;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--data" && i + 1 < argc) {
            opt.data_dir = argv[++i];
        } else if (arg == "--threads" && i + 1 < argc) {
            opt.threads = std::atoi(argv[++i]);
            if (opt.threads < 1) {
                std::cerr << "--threads wants a positive count\n";
                return 2;
            }
        } else {
            std::cerr << "usage: gv4_acceptance [--data DIR] [--threads N]\n";
            return 2;
        }
    }

    const std::vector<gv4::CriterionResult> results = gv4::run_acceptance(opt);
    for (const gv4::CriterionResult& r : results)
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.slug << ": " << r.detail
                  << "\n";
    const bool ok = gv4::all_passed(results);
    std::cout << (ok ? "all 13 criteria passed" : "ACCEPTANCE FAILED") << "\n";
    return ok ? 0 : 1;
}
