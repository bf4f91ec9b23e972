#include "detsolve/solver.hpp"

#include <json.hpp>
#include <set>

#include "detsolve/oracle.hpp"

namespace detsolve {

Slp target_system(const ProblemSpec& spec) {
    const size_t n = spec.n();
    SlpBuilder b(static_cast<uint32_t>(n));
    std::vector<uint32_t> xs(n);
    for (size_t i = 0; i < n; ++i) xs[i] = b.input(static_cast<uint32_t>(i));
    if (spec.s > 0)
        for (uint32_t o : b.splice(spec.G, xs)) b.output(o);
    for (uint32_t o : b.splice(spec.F, xs)) b.output(o);
    return slp_minors(b.take(), spec.p, spec.q, spec.s);
}

SolveReport solve(const ProblemSpec& spec) {
    // a constant nonzero side equation makes the system inconsistent;
    // answer with the empty set instead of rejecting the profile
    for (size_t i = 0; i < spec.s; ++i) {
        if (spec.profile.gdeg[i] != 0) continue;
        FpField Fc(spec.options.prime);
        std::vector<Fp> origin(spec.n(), Fc.zero());
        Fp val = slp_eval(spec.G, Fc, std::span<const Fp>(origin))[i];
        if (!Fc.is_zero(val)) {
            SolveReport rep;
            rep.zdp = zdp_empty(Fc, spec.n(), std::vector<Fp>(spec.n(), Fc.one()));
            rep.mode_used = "column";
            rep.prime = Fc.prime();
            rep.seed = spec.options.seed;
            rep.residual_zero = true;
            rep.count_within_bound = true;
            if (spec.options.simple) rep.simple_rank_full = true;
            return rep;
        }
    }
    spec.profile.validate();
    SolveBounds bd = compute_bounds(spec.profile);

    bool use_column = true;
    switch (spec.options.mode) {
        case SolveMode::Column: use_column = true; break;
        case SolveMode::Row: use_column = false; break;
        case SolveMode::Auto: use_column = bd.c <= bd.cprime; break;
    }
    const BigInt& count_bound = use_column ? bd.c : bd.cprime;
    const BigInt& curve_bound = use_column ? bd.e : bd.eprime;

    FieldCtx ctx(spec.options.prime, spec.options.seed);
    // separability and the Newton-identity divisions need a field larger
    // than twice the curve bound, and the Vandermonde start needs p > q
    if (BigInt(ctx.field.prime()) <= 2 * curve_bound)
        throw InvalidProfileError(
            "prime must exceed twice the curve degree bound for this problem; "
            "pick a larger --prime");
    if (ctx.field.prime() <= spec.q)
        throw InvalidProfileError("prime must exceed the number of columns");

    SolveReport rep;
    rep.bounds = bd;
    rep.prime = ctx.field.prime();
    rep.seed = spec.options.seed;
    rep.mode_used = use_column ? "column" : "row";

    SolveStats stats;
    Rng rng = ctx.rng(use_column ? 0xC01 : 0x520);
    rep.zdp = use_column
                  ? column_degree(ctx, spec.F, spec.G, spec.profile,
                                  spec.options.simple, rng, &stats)
                  : row_degree(ctx, spec.F, spec.G, spec.profile,
                               spec.options.simple, rng, &stats);
    rep.retries = stats.retries;

    Slp target = target_system(spec);
    rep.residual_zero = zdp_residual_is_zero(ctx.field, rep.zdp, target);
    rep.count_within_bound = BigInt(rep.zdp.count()) <= count_bound;
    if (spec.options.simple)
        rep.simple_rank_full =
            jacobian_full_rank_everywhere(ctx.field, rep.zdp, target);
    if (!rep.residual_zero)
        throw std::logic_error("solver output failed the residual check");
    if (spec.options.check && !zdp_invariants_hold(ctx.field, rep.zdp))
        throw std::logic_error("output parametrization violates its invariants");
    return rep;
}

namespace {

nlohmann::json bigint_json(const BigInt& v) {
    if (v <= BigInt(UINT64_MAX)) return v.convert_to<uint64_t>();
    return v.str();
}

nlohmann::json poly_json(const UPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (Fp c : p) a.push_back(c.v);
    return a;
}

}  // namespace

std::string report_to_json(const SolveReport& report) {
    nlohmann::json j;
    j["prime"] = report.prime;
    j["seed"] = report.seed;
    j["mode"] = report.mode_used;
    nlohmann::json lam = nlohmann::json::array();
    for (Fp c : report.zdp.lambda) lam.push_back(c.v);
    j["lambda"] = lam;
    j["w"] = poly_json(report.zdp.w);
    nlohmann::json vs = nlohmann::json::array();
    for (const UPoly& vi : report.zdp.v) vs.push_back(poly_json(vi));
    j["v"] = vs;
    j["count"] = report.zdp.count();
    j["bounds"] = {{"c", bigint_json(report.bounds.c)},
                   {"cprime", bigint_json(report.bounds.cprime)},
                   {"e", bigint_json(report.bounds.e)},
                   {"eprime", bigint_json(report.bounds.eprime)}};
    j["retries"] = report.retries;
    nlohmann::json checks;
    checks["residual_zero"] = report.residual_zero;
    checks["count_within_bound"] = report.count_within_bound;
    if (report.simple_rank_full.has_value())
        checks["simple_rank_full"] = *report.simple_rank_full;
    j["checks"] = checks;
    return j.dump(2);
}

OracleReport oracle_check(ProblemSpec spec, uint64_t small_prime, uint64_t budget) {
    if (spec.n() > 3)
        throw TooLargeError();
    spec.options.prime = small_prime;
    OracleReport rep;
    rep.solve_report = solve(spec);

    FpField Fq(small_prime);
    auto oracle_pts = enumerate_variety(Fq, spec.F, spec.p, spec.q, spec.G, budget);
    rep.oracle_count = oracle_pts.size();
    rep.solver_count = rep.solve_report.zdp.count();

    std::set<std::vector<uint64_t>> oracle_set;
    for (const auto& pt : oracle_pts) {
        std::vector<uint64_t> raw(pt.size());
        for (size_t i = 0; i < pt.size(); ++i) raw[i] = pt[i].v;
        oracle_set.insert(std::move(raw));
    }
    rep.solver_points_contained = true;
    for (const auto& pt : zdp_rational_points(Fq, rep.solve_report.zdp)) {
        ++rep.solver_rational;
        std::vector<uint64_t> raw(pt.size());
        for (size_t i = 0; i < pt.size(); ++i) raw[i] = pt[i].v;
        if (!oracle_set.count(raw)) rep.solver_points_contained = false;
    }
    return rep;
}

}  // namespace detsolve
