#include <cbn/learner.hpp>

#include <chrono>

namespace cbn {

std::array<double, 3> PhaseTiming::fractions() const {
    const double sum = phase1_s + phase2_s + phase3_s;
    if (sum <= 0.0)
        return {1.0, 0.0, 0.0};
    return {phase1_s / sum, phase2_s / sum, phase3_s / sum};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

LearnResult learn_structure(const Dataset& d, const LearnOptions& options) {
    if (d.num_variables() < 2)
        throw DataError("learn: need at least two variables");
    const auto deadline = options.timeout_seconds ? Deadline::after(*options.timeout_seconds) : Deadline{};
    const auto names = d.names();
    LearnResult r;

    const auto start = Clock::now();
    auto mark = start;
    r.table = score_pairs(d);
    r.emsg = build_emsg(r.table, names);
    r.timing.phase1_s = seconds_since(mark);

    mark = Clock::now();
    const ScoreContext ctx(d);
    if (!score_triples(r.table, d, deadline))
        r.partial = true;
    auto phase2 = run_phase2(r.emsg, r.table, ctx, deadline);
    r.partial = r.partial || phase2.cut_short;
    r.phase2 = phase2.dag;
    r.orientation_trace = std::move(phase2.trace);
    r.forced_orientations = phase2.forced;
    r.timing.phase2_s = seconds_since(mark);

    mark = Clock::now();
    SearchOptions search_options;
    search_options.deadline = deadline;
    search_options.observer = options.search_observer;
    auto search = run_phase3(r.phase2, ctx, r.table, search_options);
    r.timing.phase3_s = seconds_since(mark);
    r.timing.total_s = seconds_since(start);

    r.partial = r.partial || search.partial;
    r.dag = std::move(search.dag);
    r.bic = search.bic;
    r.search_trace = std::move(search.trace);
    r.escapes = search.escapes;
    return r;
}

} // namespace cbn
