// Acceptance runner: one line per criterion, nonzero exit on any failure.
// Criteria and tolerances are pinned here; suites are deterministic given
// their seeds.

#include "forge/suite.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace forge;

namespace {

struct Outcome {
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
    std::printf("criterion %2d [%s]: %s (%.1fs)%s%s\n", id, name.c_str(),
                o.pass ? "PASS" : "FAIL", o.seconds, o.detail.empty() ? "" : " — ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++g_failures;
}

template <typename Fn>
Outcome timed(double limit_seconds, Fn&& fn) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    o.pass = fn(o.detail);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && o.seconds > limit_seconds) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("exceeded ") +
                    std::to_string(limit_seconds) + "s limit";
    }
    return o;
}

SuiteOptions make_opts(std::uint64_t seed, std::size_t trials, std::size_t jobs = 2) {
    SuiteOptions o;
    o.seed = seed;
    o.trials = trials;
    o.jobs = jobs;
    o.include_instances = false;
    return o;
}

std::string count_detail(const SuiteReport& r) {
    return std::to_string(r.failures) + " failures / " + std::to_string(r.opts.trials) +
           " trials";
}

}  // namespace

int main() {
    SuiteReport embed2p_report;

    report(1, "embed-1p seed 7, 200 trials, exact morphism + joint laws",
           timed(30, [&](std::string& detail) {
               const auto r = run_suite("embed-1p", make_opts(7, 200));
               detail = count_detail(r);
               return r.pass;
           }));

    report(2, "embed-2p seed 7, 100 trials, exact measure/chain/factorization",
           timed(120, [&](std::string& detail) {
               embed2p_report = run_suite("embed-2p", make_opts(7, 100));
               const auto& agg = embed2p_report.payload["aggregate"];
               detail = count_detail(embed2p_report);
               return embed2p_report.failures == 0 &&
                      agg["measure_failures"] == 0 && agg["preimage_failures"] == 0 &&
                      agg["chain_failures"] == 0;
           }));

    report(3, "non-f4 rejection, 100 adversarial instances with reproducible witnesses",
           timed(0, [&](std::string& detail) {
               const auto r = run_suite("non-f4", make_opts(7, 100));
               detail = count_detail(r);
               return r.pass;
           }));

    report(4, "canonical-grid F4 closure over the embed-2p models",
           timed(0, [&](std::string& detail) {
               const auto& agg = embed2p_report.payload["aggregate"];
               const auto closure = agg["f4_closure_failures"];
               detail = "closure failures: " + closure.dump();
               return closure == 0;
           }));

    report(5, "conservation E[S^2]=E[s^2]=E[sigma^2] + exact telescoping, 200 martingales",
           timed(0, [&](std::string& detail) {
               const auto r = run_suite("conservation", make_opts(7, 200));
               detail = count_detail(r);
               return r.pass;
           }));

    report(6, "tangent identities + sectional independence, 100 copies; unit single-term ratios",
           timed(0, [&](std::string& detail) {
               const auto r = run_suite("tangent", make_opts(7, 100));
               detail = count_detail(r);
               return r.pass;
           }));

    report(7, "weighted square-function inequality, 500 systems",
           timed(20, [&](std::string& detail) {
               const auto r = run_suite("lemma2", make_opts(7, 500));
               detail = count_detail(r);
               return r.pass;
           }));

    report(8, "maximal constant |A|^{-1/2}, 20 families x 200 functions, exact squared level",
           timed(0, [&](std::string& detail) {
               const auto r = run_suite("doob", make_opts(7, 20));
               detail = count_detail(r);
               return r.pass;
           }));

    report(9, "decomposition solver vs oracle (20 instances) + sandwich stability (seeds 11/13)",
           timed(300, [&](std::string& detail) {
               const auto r = run_suite("davis-garsia", make_opts(7, 20));
               const auto& sandwich = r.payload["aggregate"]["sandwich"];
               detail = count_detail(r) + "; sandwich " + sandwich["suite0"].dump() + " vs " +
                        sandwich["suite1"].dump();
               return r.pass;
           }));

    report(10, "atomic approximation, 100 vector martingales, eps in {1, 1/4}",
           timed(0, [&](std::string& detail) {
               const auto r = run_suite("approx-1p", make_opts(7, 100));
               detail = count_detail(r);
               return r.pass;
           }));

    report(11, "byte-identical reruns + 1000 serialization round-trips",
           timed(0, [&](std::string& detail) {
               const auto det = run_suite("determinism", make_opts(7, 0));
               const auto rt = run_suite("roundtrip", make_opts(7, 1000));
               detail = "determinism mismatches: " + std::to_string(det.failures) +
                        ", roundtrip failures: " + std::to_string(rt.failures);
               return det.pass && rt.pass;
           }));

    if (g_failures == 0) {
        std::printf("all criteria PASS\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
