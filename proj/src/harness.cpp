#include "ncup/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "ncup/errors.hpp"
#include "ncup/serialize.hpp"

namespace ncup {

namespace {

AlgebraElement gaussian_projected(const AlgebraPtr& alg, Rng& rng) {
    // Standard complex Gaussian entries, then the orthogonal projection into
    // the algebra.
    if (alg->diagonal_storage()) {
        Mat m(alg->dim, alg->dim);
        for (int i = 0; i < alg->dim; ++i) m(i, i) = rng.cgauss();
        return project_into(alg, m);
    }
    Mat m(alg->dim, alg->dim);
    for (auto& v : m.raw()) v = rng.cgauss();
    return project_into(alg, m);
}

// Positions after which the ordered value list may be cut without splitting a
// near-degenerate cluster; always contains the full length.
std::vector<int> cluster_cuts(const std::vector<double>& vals, double scale) {
    std::vector<int> cuts;
    for (size_t i = 1; i < vals.size(); ++i)
        if (vals[i - 1] - vals[i] > 1e-8 * std::max(scale, 1e-300))
            cuts.push_back(static_cast<int>(i));
    cuts.push_back(static_cast<int>(vals.size()));
    return cuts;
}

AlgebraElement surgery_projection(const TwoBoxPair&, const AlgebraPtr& alg, Rng& rng) {
    if (alg->diagonal_storage() && alg->basis.empty()) {
        std::vector<cplx> d(alg->dim, cplx{});
        int k = rng.uniform_int(1, alg->dim);
        std::vector<int> idx(alg->dim);
        for (int i = 0; i < alg->dim; ++i) idx[i] = i;
        for (int i = 0; i < k; ++i) std::swap(idx[i], idx[rng.uniform_int(i, alg->dim - 1)]);
        for (int i = 0; i < k; ++i) d[idx[i]] = 1.0;
        return AlgebraElement::from_diagonal(alg, std::move(d));
    }
    if (!alg->basis.empty() && alg->diagonal_storage()) {
        // Orbit-level indicator.
        int m = alg->vec_dim();
        std::vector<cplx> c(m, cplx{});
        int k = rng.uniform_int(1, m);
        std::vector<int> idx(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        for (int i = 0; i < k; ++i) std::swap(idx[i], idx[rng.uniform_int(i, m - 1)]);
        for (int i = 0; i < k; ++i) c[idx[i]] = 1.0;
        return AlgebraElement::from_coords(alg, c);
    }
    AlgebraElement z = gaussian_projected(alg, rng);
    AlgebraElement h = cplx{0.5} * (z + adjoint(z));
    auto [vals, vecs] = hermitian_eig(h);
    double scale = vals.empty() ? 0.0 : std::max(std::abs(vals.front()), std::abs(vals.back()));
    std::vector<int> cuts = cluster_cuts(vals, scale);
    int cut = cuts[rng.uniform_int(0, static_cast<int>(cuts.size()) - 1)];
    if (cut == 0) cut = cuts.back();
    Mat p(alg->dim, alg->dim);
    for (int j = 0; j < cut; ++j)
        for (int i = 0; i < alg->dim; ++i)
            for (int k2 = 0; k2 < alg->dim; ++k2)
                p(i, k2) += vecs(i, j) * std::conj(vecs(k2, j));
    return project_into(alg, p);
}

AlgebraElement surgery_partial_isometry(const AlgebraPtr& alg, Rng& rng, bool full_rank) {
    if (alg->diagonal_storage() && alg->basis.empty()) {
        std::vector<cplx> d(alg->dim, cplx{});
        int k = full_rank ? alg->dim : rng.uniform_int(1, alg->dim);
        std::vector<int> idx(alg->dim);
        for (int i = 0; i < alg->dim; ++i) idx[i] = i;
        for (int i = 0; i < k; ++i) std::swap(idx[i], idx[rng.uniform_int(i, alg->dim - 1)]);
        for (int i = 0; i < k; ++i) {
            double theta = 6.283185307179586 * rng.uniform();
            d[idx[i]] = cplx(std::cos(theta), std::sin(theta));
        }
        return AlgebraElement::from_diagonal(alg, std::move(d));
    }
    if (!alg->basis.empty() && alg->diagonal_storage()) {
        int m = alg->vec_dim();
        std::vector<cplx> c(m, cplx{});
        int k = full_rank ? m : rng.uniform_int(1, m);
        std::vector<int> idx(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        for (int i = 0; i < k; ++i) std::swap(idx[i], idx[rng.uniform_int(i, m - 1)]);
        for (int i = 0; i < k; ++i) {
            double theta = 6.283185307179586 * rng.uniform();
            c[idx[i]] = cplx(std::cos(theta), std::sin(theta));
        }
        return AlgebraElement::from_coords(alg, c);
    }
    for (;;) {
        AlgebraElement z = gaussian_projected(alg, rng);
        SpectralDecomposition sd = spectral_decomposition(z);
        if (sd.values.empty() || sd.values[0] <= 0) continue;
        std::vector<int> cuts = cluster_cuts(sd.values, sd.values[0]);
        int cut;
        if (full_rank) {
            if (sd.values.back() < 1e-6 * sd.values[0]) continue;  // redraw near-singular
            cut = static_cast<int>(sd.values.size());
        } else {
            cut = cuts[rng.uniform_int(0, static_cast<int>(cuts.size()) - 1)];
            if (cut == 0) cut = cuts.back();
            while (cut > 0 && sd.values[cut - 1] <= 1e-6 * sd.values[0]) --cut;
            if (cut == 0) continue;
        }
        Mat w(alg->dim, alg->dim);
        for (int j = 0; j < cut; ++j)
            for (int i = 0; i < alg->dim; ++i)
                for (int k2 = 0; k2 < alg->dim; ++k2)
                    w(i, k2) += sd.left(i, j) * std::conj(sd.right(k2, j));
        return project_into(alg, w);
    }
}

AlgebraElement sparse_sample(const AlgebraPtr& alg, Rng& rng, int k) {
    int m = alg->vec_dim();
    k = std::max(1, std::min(k, m));
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) std::swap(idx[i], idx[rng.uniform_int(i, m - 1)]);
    std::vector<cplx> c(m, cplx{});
    for (int i = 0; i < k; ++i) c[idx[i]] = rng.cgauss();
    return AlgebraElement::from_coords(alg, c);
}

}  // namespace

AlgebraElement sample_element(const TwoBoxPair& pair, const SampleSpec& spec,
                              uint64_t master_seed, uint64_t stream, uint64_t index) {
    Rng rng = Rng::for_sample(master_seed, stream, index);
    const AlgebraPtr& alg = spec.minus_side ? pair.minus : pair.plus;
    switch (spec.cls) {
        case SampleSpec::Class::Generic:
            return gaussian_projected(alg, rng);
        case SampleSpec::Class::Positive: {
            AlgebraElement z = gaussian_projected(alg, rng);
            return adjoint(z) * z;
        }
        case SampleSpec::Class::SelfAdjoint: {
            AlgebraElement z = gaussian_projected(alg, rng);
            return cplx{0.5} * (z + adjoint(z));
        }
        case SampleSpec::Class::Projection:
            return surgery_projection(pair, alg, rng);
        case SampleSpec::Class::PartialIsometry:
            return surgery_partial_isometry(alg, rng, false);
        case SampleSpec::Class::Unitary:
            return surgery_partial_isometry(alg, rng, true);
        case SampleSpec::Class::Sparse:
            return sparse_sample(alg, rng, spec.sparse_k);
        case SampleSpec::Class::BiunitaryCandidate: {
            if (pair.model == TwoBoxPair::Model::Group && spec.minus_side) {
                int n = pair.group->order();
                std::vector<cplx> a(n);
                double s = 1.0 / std::sqrt(static_cast<double>(n));
                for (auto& v : a) {
                    double theta = 6.283185307179586 * rng.uniform();
                    v = s * cplx(std::cos(theta), std::sin(theta));
                }
                return pair.minus_from_coeffs(a);
            }
            return surgery_partial_isometry(alg, rng, true);
        }
    }
    fail("ConfigError", "unknown sample class");
}

const std::vector<double>& default_p_grid() {
    static const std::vector<double> grid = {2.0, 2.5, 3.0, 4.0, 8.0, kPInf};
    return grid;
}

std::vector<double> hausdorff_young_margins(const TwoBoxPair& pair, const AlgebraElement& x,
                                            const std::vector<double>& p_grid) {
    std::vector<double> out;
    out.reserve(p_grid.size());
    AlgebraElement fx = pair.fourier(x);
    for (double p : p_grid) {
        double q = (p == kPInf) ? 1.0 : p / (p - 1.0);
        double rhs = std::pow(1.0 / pair.delta0, 1.0 - 2.0 / p) * p_norm(x, q);
        double lhs = p_norm(fx, p);
        out.push_back((rhs - lhs) / std::max(rhs, 1e-300));
    }
    return out;
}

const std::vector<YoungTriple>& default_young_grid() {
    static const std::vector<YoungTriple> grid = {
        {1.0, 1.0, 1.0},    {1.0, 2.0, 2.0},   {2.0, 1.0, 2.0},
        {1.0, kPInf, kPInf}, {1.5, 1.5, 3.0},  {2.0, 2.0, kPInf}};
    return grid;
}

std::vector<double> young_margins(const TwoBoxPair& pair, const AlgebraElement& x,
                                  const AlgebraElement& y,
                                  const std::vector<YoungTriple>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    AlgebraElement xy = pair.coproduct(x, y);
    for (const auto& t : grid) {
        double ip = t.p == kPInf ? 0.0 : 1.0 / t.p;
        double iq = t.q == kPInf ? 0.0 : 1.0 / t.q;
        double ir = t.r == kPInf ? 0.0 : 1.0 / t.r;
        if (std::abs(ip + iq - ir - 1.0) > 1e-12)
            fail("InvalidExponents", "Young exponents must satisfy 1/p + 1/q = 1/r + 1");
        double rhs = p_norm(x, t.p) * p_norm(y, t.q) / pair.delta0;
        double lhs = p_norm(xy, t.r);
        out.push_back((rhs - lhs) / std::max(rhs, 1e-300));
    }
    return out;
}

double donoho_stark_margin(const TwoBoxPair& pair, const AlgebraElement& x) {
    auto rounded = [&](const AlgebraElement& z) {
        double units = support_size(z) / z.algebra().trace_scale;
        double r = std::round(units);
        if (std::abs(units - r) <= 1e-6) units = r;
        return units * z.algebra().trace_scale;
    };
    double prod = rounded(x) * rounded(pair.fourier(x));
    return prod - pair.delta0_sq;
}

double hirschman_beckner_margin(const TwoBoxPair& pair, const AlgebraElement& x) {
    AlgebraElement y = cplx{1.0 / p_norm(x, 2.0)} * x;
    return entropy(y) + entropy(pair.fourier(y)) - 2.0 * std::log(pair.delta0);
}

bool irreducible_model(const TwoBoxPair& pair) {
    if (pair.model == TwoBoxPair::Model::Group) return true;
    return std::abs(pair.delta0 - pair.delta) <= 1e-12 * pair.delta;
}

AlgebraElement minimal_box(const TwoBoxPair& pair) {
    switch (pair.model) {
        case TwoBoxPair::Model::Group:
            return pair.delta_function(pair.group->identity());
        case TwoBoxPair::Model::Spin: {
            Mat m(pair.spin_points, pair.spin_points);
            m(0, 0) = 1.0;
            return AlgebraElement::from_matrix(pair.plus, m);
        }
        case TwoBoxPair::Model::FixedPoint: {
            auto orbs = pair.action.orbits();
            const std::vector<int>* best = &orbs[0];
            for (const auto& o : orbs)
                if (o.size() < best->size()) best = &o;
            Mat m(pair.spin_points, pair.spin_points);
            for (int i : *best) m(i, i) = 1.0;
            return AlgebraElement::from_matrix(pair.plus, m);
        }
    }
    fail("ConfigError", "unknown model");
}

namespace {

struct SampleOutcome {
    double margin = 0;
    bool capture = false;       // margin below -tolerance, witness attached
    std::string element_json;   // serialized witness (possibly empty)
};

struct CheckPlan {
    std::string name;
    std::string suite;
    long samples = 0;
    double tolerance = 0;
    bool probe = false;
    std::function<SampleOutcome(uint64_t)> kernel;
    std::map<std::string, double> stats;  // filled before or after the run
};

CheckReport execute_plan(const TwoBoxPair& pair, const CheckPlan& plan, uint64_t master_seed,
                         int parallelism) {
    auto t0 = std::chrono::steady_clock::now();
    const long n = plan.samples;
    std::vector<SampleOutcome> out(static_cast<size_t>(n));
    auto worker = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) out[static_cast<size_t>(i)] = plan.kernel(
            static_cast<uint64_t>(i));
    };
    int par = static_cast<int>(std::max<long>(1, std::min<long>(parallelism, n)));
    if (par == 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(par);
        for (int t = 0; t < par; ++t) {
            long lo = n * t / par, hi = n * (t + 1) / par;
            threads.emplace_back(worker, lo, hi);
        }
        for (auto& t : threads) t.join();
    }

    CheckReport r;
    r.name = plan.name;
    r.model = pair.label();
    r.suite = plan.suite;
    r.samples = n;
    r.tolerance = plan.tolerance;
    r.probe = plan.probe;
    r.stats = plan.stats;
    r.min_margin = out.empty() ? 0.0 : out[0].margin;
    const auto& edges = histogram_edges();
    r.histogram.assign(edges.size() + 1, 0);
    for (const auto& o : out) {
        r.min_margin = std::min(r.min_margin, o.margin);
        size_t bin = 0;
        while (bin < edges.size() && o.margin > edges[bin]) ++bin;
        ++r.histogram[bin];
        if (o.capture && r.counterexamples.size() < 10) {
            Counterexample ce;
            ce.index = static_cast<uint64_t>(&o - out.data());
            ce.master_seed = master_seed;
            ce.margin = o.margin;
            ce.element_json = o.element_json;
            r.counterexamples.push_back(std::move(ce));
        }
    }
    r.max_violation = std::max(0.0, -r.min_margin);
    r.pass = r.probe || r.max_violation <= plan.tolerance;
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    return r;
}

SampleSpec rotating_spec(const TwoBoxPair& pair, uint64_t i) {
    static const SampleSpec::Class classes[] = {
        SampleSpec::Class::Generic,       SampleSpec::Class::Positive,
        SampleSpec::Class::SelfAdjoint,   SampleSpec::Class::Projection,
        SampleSpec::Class::PartialIsometry, SampleSpec::Class::Unitary,
        SampleSpec::Class::Sparse};
    SampleSpec spec;
    spec.cls = classes[i % 7];
    spec.minus_side = (i / 7) % 2 == 1;
    int m = (spec.minus_side ? pair.minus : pair.plus)->vec_dim();
    spec.sparse_k = 1 + static_cast<int>(i % static_cast<uint64_t>(std::min(m, 4)));
    return spec;
}

std::string witness_json(const TwoBoxPair& pair, const AlgebraElement& x) {
    return element_to_json(pair, x).dump();
}

double fold_min(const std::vector<double>& v) {
    double m = v.empty() ? 0.0 : v[0];
    for (double x : v) m = std::min(m, x);
    return m;
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
    if (config.models.empty()) fail("ConfigError", "no models configured");
    auto enabled = [&](const std::string& tag) {
        if (config.suites.empty()) return true;
        return std::find(config.suites.begin(), config.suites.end(), tag) != config.suites.end();
    };

    std::vector<CheckReport> reports;
    for (const std::string& spec : config.models) {
        TwoBoxPair pair = make_model(spec);
        const uint64_t seed = config.seed;
        auto stream = [&](const std::string& check) { return fnv1a(spec + "/" + check); };
        std::vector<CheckPlan> plans;

        if (enabled("fourier")) {
            CheckPlan p;
            p.name = "fourier_unitary";
            p.suite = "fourier";
            p.samples = config.samples;
            p.tolerance = 1e-10;
            uint64_t st = stream(p.name);
            p.kernel = [&pair, seed, st](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st, i);
                double nx = std::max(x.frob(), 1e-300);
                AlgebraElement fx = pair.fourier(x);
                double plancherel =
                    std::abs(p_norm(fx, 2.0) - p_norm(x, 2.0)) / std::max(p_norm(x, 2.0), 1e-300);
                double period = (pair.fourier(pair.fourier(pair.fourier(fx))) - x).frob() / nx;
                double inv = (pair.fourier_inv(fx) - x).frob() / nx;
                double fb = (pair.fourier_inv(adjoint(x)) - adjoint(fx)).frob() / nx;
                SampleOutcome o;
                o.margin = -std::max({plancherel, period, inv, fb});
                if (o.margin < -1e-10) {
                    o.capture = true;
                    o.element_json = witness_json(pair, x);
                }
                return o;
            };
            plans.push_back(std::move(p));
        }

        if (enabled("hy")) {
            CheckPlan p;
            p.name = "hausdorff_young";
            p.suite = "hy";
            p.samples = config.samples;
            p.tolerance = config.tol.inequality;
            uint64_t st = stream(p.name);
            double tol = p.tolerance;
            p.kernel = [&pair, seed, st, tol](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st, i);
                SampleOutcome o;
                o.margin = fold_min(hausdorff_young_margins(pair, x, default_p_grid()));
                if (o.margin < -tol) {
                    o.capture = true;
                    o.element_json = witness_json(pair, x);
                }
                return o;
            };
            plans.push_back(std::move(p));

            CheckPlan p2;
            p2.name = "hy_p2_equality";
            p2.suite = "hy";
            p2.samples = config.samples;
            p2.tolerance = config.tol.inequality;
            uint64_t st2 = stream(p2.name);
            p2.kernel = [&pair, seed, st2](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st2, i);
                double m = hausdorff_young_margins(pair, x, {2.0})[0];
                return SampleOutcome{-std::abs(m), false, {}};
            };
            plans.push_back(std::move(p2));

            CheckPlan p3;
            p3.name = irreducible_model(pair) ? "hy_pinf_positive_equality"
                                              : "hy_pinf_minimal_box_equality";
            p3.suite = "hy";
            p3.samples = irreducible_model(pair) ? config.samples : 1;
            p3.tolerance = config.tol.inequality;
            uint64_t st3 = stream(p3.name);
            bool irr = irreducible_model(pair);
            p3.kernel = [&pair, seed, st3, irr](uint64_t i) {
                AlgebraElement x =
                    irr ? sample_element(pair,
                                         SampleSpec{SampleSpec::Class::Positive, i % 2 == 1, 1},
                                         seed, st3, i)
                        : minimal_box(pair);
                double m = hausdorff_young_margins(pair, x, {kPInf})[0];
                return SampleOutcome{-std::abs(m), false, {}};
            };
            plans.push_back(std::move(p3));
        }

        if (enabled("young")) {
            CheckPlan p;
            p.name = "young";
            p.suite = "young";
            p.samples = config.samples;
            p.tolerance = config.tol.inequality;
            uint64_t st = stream(p.name);
            double tol = p.tolerance;
            p.kernel = [&pair, seed, st, tol](uint64_t i) {
                SampleSpec sx = rotating_spec(pair, i);
                SampleSpec sy = rotating_spec(pair, i * 31 + 7);
                sy.minus_side = sx.minus_side;
                AlgebraElement x = sample_element(pair, sx, seed, st, 2 * i);
                AlgebraElement y = sample_element(pair, sy, seed, st, 2 * i + 1);
                SampleOutcome o;
                o.margin = fold_min(young_margins(pair, x, y, default_young_grid()));
                if (o.margin < -tol) {
                    o.capture = true;
                    o.element_json = witness_json(pair, x);
                }
                return o;
            };
            plans.push_back(std::move(p));

            CheckPlan pe;
            bool irr = irreducible_model(pair);
            pe.name = irr ? "young_equality_identity" : "young_equality_minimal_box";
            pe.suite = "young";
            pe.samples = 1;
            pe.tolerance = 1e-10;
            pe.kernel = [&pair, irr](uint64_t) {
                AlgebraElement x =
                    irr ? AlgebraElement::identity(pair.plus) : minimal_box(pair);
                double worst = 0;
                for (double m : young_margins(pair, x, x, default_young_grid()))
                    worst = std::max(worst, std::abs(m));
                return SampleOutcome{-worst, false, {}};
            };
            plans.push_back(std::move(pe));
        }

        if (enabled("ds")) {
            CheckPlan p;
            p.name = "donoho_stark";
            p.suite = "ds";
            p.samples = config.samples;
            p.tolerance = config.tol.rank;
            uint64_t st = stream(p.name);
            double tol = p.tolerance;
            p.kernel = [&pair, seed, st, tol](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st, i);
                SampleOutcome o;
                o.margin = donoho_stark_margin(pair, x);
                if (o.margin < -tol) {
                    o.capture = true;
                    o.element_json = witness_json(pair, x);
                }
                return o;
            };
            plans.push_back(std::move(p));

            CheckPlan pe;
            pe.name = "ds_equality_minimal_box";
            pe.suite = "ds";
            pe.samples = 1;
            pe.tolerance = config.tol.rank;
            pe.kernel = [&pair](uint64_t) {
                return SampleOutcome{-std::abs(donoho_stark_margin(pair, minimal_box(pair))),
                                     false,
                                     {}};
            };
            plans.push_back(std::move(pe));
        }

        if (enabled("hb")) {
            CheckPlan p;
            p.name = "hirschman_beckner";
            p.suite = "hb";
            p.samples = config.samples;
            p.tolerance = config.tol.equality;
            uint64_t st = stream(p.name);
            double tol = p.tolerance;
            p.kernel = [&pair, seed, st, tol](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st, i);
                SampleOutcome o;
                o.margin = hirschman_beckner_margin(pair, x);
                if (o.margin < -tol) {
                    o.capture = true;
                    o.element_json = witness_json(pair, x);
                }
                return o;
            };
            plans.push_back(std::move(p));

            CheckPlan pc;
            pc.name = "entropy_support_bound";
            pc.suite = "hb";
            pc.samples = config.samples;
            pc.tolerance = config.tol.inequality;
            uint64_t st2 = stream(pc.name);
            pc.kernel = [&pair, seed, st2](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st2, i);
                AlgebraElement y = cplx{1.0 / p_norm(x, 2.0)} * x;
                AlgebraElement fy = pair.fourier(y);
                double m1 = std::log(support_size(y)) - entropy(y);
                double m2 = std::log(support_size(fy)) - entropy(fy);
                return SampleOutcome{std::min(m1, m2), false, {}};
            };
            plans.push_back(std::move(pc));

            CheckPlan pe;
            pe.name = "hb_equality_witnesses";
            pe.suite = "hb";
            pe.samples = 2;
            pe.tolerance = config.tol.equality;
            pe.kernel = [&pair](uint64_t i) {
                AlgebraElement x = minimal_box(pair);
                if (i == 1) x = pair.fourier(x);
                return SampleOutcome{-std::abs(hirschman_beckner_margin(pair, x)), false, {}};
            };
            plans.push_back(std::move(pe));

            CheckPlan pm;
            pm.name = "entropy_max_bound";
            pm.suite = "hb";
            pm.samples = config.samples;
            pm.tolerance = config.tol.equality;
            uint64_t st3 = stream(pm.name);
            pm.kernel = [&pair, seed, st3](uint64_t i) {
                SampleSpec spec = rotating_spec(pair, i);
                if (pair.model == TwoBoxPair::Model::Group && i % 3 == 0) {
                    spec.cls = SampleSpec::Class::BiunitaryCandidate;
                    spec.minus_side = true;
                }
                AlgebraElement x = sample_element(pair, spec, seed, st3, i);
                AlgebraElement z = cplx{pair.delta / p_norm(x, 2.0)} * x;
                double sum = entropy(z) + entropy(pair.fourier(z));
                return SampleOutcome{-sum, false, {}};  // must stay <= 0
            };
            plans.push_back(std::move(pm));

            if (pair.model == TwoBoxPair::Model::Group && pair.group->order() % 2 == 1 &&
                [&] {  // cyclic test: one generator of full order
                    for (int x = 0; x < pair.group->order(); ++x)
                        if (pair.group->element_order(x) == pair.group->order()) return true;
                    return false;
                }()) {
                CheckPlan pw;
                pw.name = "entropy_max_biunitary_witness";
                pw.suite = "hb";
                pw.samples = 1;
                pw.tolerance = config.tol.equality;
                pw.kernel = [&pair](uint64_t) {
                    // Gauss chirp: biunimodular on odd cyclic groups.
                    int n = pair.group->order();
                    std::vector<cplx> a(n);
                    for (int g = 0; g < n; ++g) {
                        double theta = 6.283185307179586 * ((g * g) % n) / n;
                        a[g] = cplx(std::cos(theta), std::sin(theta)) / std::sqrt(double(n));
                    }
                    AlgebraElement x = pair.minus_from_coeffs(a);
                    AlgebraElement z = cplx{pair.delta / p_norm(x, 2.0)} * x;
                    double sum = entropy(z) + entropy(pair.fourier(z));
                    return SampleOutcome{-std::abs(sum), false, {}};
                };
                plans.push_back(std::move(pw));
            }
        }

        if (enabled("structure")) {
            CheckPlan ps;
            ps.name = "structure_schur";
            ps.suite = "structure";
            ps.samples = config.samples;
            ps.tolerance = config.tol.inequality;
            uint64_t st = stream(ps.name);
            ps.kernel = [&pair, seed, st](uint64_t i) {
                SampleSpec spec{SampleSpec::Class::Positive, i % 2 == 1, 1};
                AlgebraElement a = sample_element(pair, spec, seed, st, 2 * i);
                AlgebraElement b = sample_element(pair, spec, seed, st, 2 * i + 1);
                AlgebraElement ab = pair.coproduct(a, b);
                auto [vals, vecs] = hermitian_eig(cplx{0.5} * (ab + adjoint(ab)));
                (void)vecs;
                double scale = std::max(p_norm(ab, kPInf), 1e-300);
                return SampleOutcome{vals.back() / scale, false, {}};
            };
            plans.push_back(std::move(ps));

            CheckPlan pc;
            pc.name = "structure_trace_exchange";
            pc.suite = "structure";
            pc.samples = config.samples;
            pc.tolerance = config.tol.inequality;
            uint64_t st2 = stream(pc.name);
            pc.kernel = [&pair, seed, st2](uint64_t i) {
                SampleSpec spec{SampleSpec::Class::Generic, i % 2 == 1, 1};
                AlgebraElement a = sample_element(pair, spec, seed, st2, 3 * i);
                AlgebraElement b = sample_element(pair, spec, seed, st2, 3 * i + 1);
                AlgebraElement c = sample_element(pair, spec, seed, st2, 3 * i + 2);
                auto bar = [&](const AlgebraElement& u) { return pair.contragredient(u); };
                cplx t1 = trace2(pair.coproduct(a, b) * bar(c));
                cplx t2 = trace2(pair.coproduct(b, c) * bar(a));
                cplx t3 = trace2(pair.coproduct(c, a) * bar(b));
                cplx t4 = trace2(pair.coproduct(bar(c), bar(b)) * a);
                cplx t5 = trace2(pair.coproduct(bar(a), bar(c)) * b);
                cplx t6 = trace2(pair.coproduct(bar(b), bar(a)) * c);
                double scale = std::max(std::abs(t1), 1.0);
                double worst = 0;
                for (cplx t : {t2, t3, t4, t5, t6})
                    worst = std::max(worst, std::abs(t - t1) / scale);
                return SampleOutcome{-worst, false, {}};
            };
            plans.push_back(std::move(pc));

            CheckPlan pq;
            pq.name = "structure_range_domination";
            pq.suite = "structure";
            pq.samples = config.samples;
            pq.tolerance = 1e-7;
            uint64_t st3 = stream(pq.name);
            pq.kernel = [&pair, seed, st3](uint64_t i) {
                SampleSpec spec{SampleSpec::Class::Generic, i % 2 == 1, 1};
                AlgebraElement x = sample_element(pair, spec, seed, st3, 2 * i);
                AlgebraElement y = sample_element(pair, spec, seed, st3, 2 * i + 1);
                AlgebraElement p = range_projection(pair.coproduct(x, y));
                AlgebraElement q = range_projection(
                    pair.coproduct(range_projection(x), range_projection(y)));
                double res = (q * p - p).frob() / std::max(1.0, p.frob());
                return SampleOutcome{-res, false, {}};
            };
            plans.push_back(std::move(pq));

            CheckPlan pt;
            pt.name = "structure_fourier_inf_bound";
            pt.suite = "structure";
            pt.samples = config.samples;
            pt.tolerance = config.tol.inequality;
            uint64_t st4 = stream(pt.name);
            pt.kernel = [&pair, seed, st4](uint64_t i) {
                AlgebraElement x = sample_element(pair, rotating_spec(pair, i), seed, st4, i);
                double rhs = p_norm(x, 1.0) / pair.delta0;
                double lhs = p_norm(pair.fourier(x), kPInf);
                return SampleOutcome{(rhs - lhs) / std::max(rhs, 1e-300), false, {}};
            };
            plans.push_back(std::move(pt));

            if (irreducible_model(pair)) {
                CheckPlan pp;
                pp.name = "structure_inf_bound_positive_equality";
                pp.suite = "structure";
                pp.samples = config.samples;
                pp.tolerance = config.tol.inequality;
                uint64_t st5 = stream(pp.name);
                pp.kernel = [&pair, seed, st5](uint64_t i) {
                    SampleSpec spec{SampleSpec::Class::Positive, i % 2 == 1, 1};
                    AlgebraElement x = sample_element(pair, spec, seed, st5, i);
                    double rhs = p_norm(x, 1.0) / pair.delta0;
                    double lhs = p_norm(pair.fourier(x), kPInf);
                    return SampleOutcome{-std::abs(rhs - lhs) / std::max(rhs, 1e-300), false, {}};
                };
                plans.push_back(std::move(pp));
            }

            CheckPlan pf;
            pf.name = "structure_coproduct_closed_form";
            pf.suite = "structure";
            pf.samples = config.samples;
            pf.tolerance = 1e-10;
            uint64_t st6 = stream(pf.name);
            pf.kernel = [&pair, seed, st6](uint64_t i) {
                SampleSpec spec{SampleSpec::Class::Generic, i % 2 == 1, 1};
                AlgebraElement x = sample_element(pair, spec, seed, st6, 2 * i);
                AlgebraElement y = sample_element(pair, spec, seed, st6, 2 * i + 1);
                AlgebraElement u = pair.coproduct(x, y);
                AlgebraElement v = pair.coproduct_closed_form(x, y);
                double res = (u - v).frob() / std::max(u.frob(), 1e-300);
                return SampleOutcome{-res, false, {}};
            };
            plans.push_back(std::move(pf));

            CheckPlan pj;
            pj.name = "structure_jones_projection";
            pj.suite = "structure";
            pj.samples = 2;
            pj.tolerance = 1e-10;
            pj.kernel = [&pair](uint64_t i) {
                bool plus = i == 0;
                AlgebraElement e = pair.jones_projection(plus);
                double idem = (e * e - e).frob();
                double tr = std::abs(trace2(e).real() - 1.0);
                AlgebraElement other = AlgebraElement::identity(
                    plus ? pair.minus : pair.plus);
                double scaled = (pair.fourier(pair.jones_scaled(plus)) - other).frob();
                return SampleOutcome{-std::max({idem, tr, scaled}), false, {}};
            };
            plans.push_back(std::move(pj));
        }

        if (pair.model == TwoBoxPair::Model::Group && enabled("minimizers")) {
            // Constructed bi-shift battery over every subgroup, character,
            // and coset representative.
            auto subgroups = enumerate_subgroups(pair.group);
            struct Item {
                Subgroup h;
                Character chi;
                int g;
            };
            std::vector<Item> items;
            long expected = 0;
            for (const auto& h : subgroups) {
                auto chars = one_dim_characters(h);
                auto cosets = right_cosets(h);
                expected += static_cast<long>(chars.size() * cosets.size());
                for (const auto& chi : chars)
                    for (const auto& coset : cosets)
                        items.push_back(Item{h, chi, coset.front()});
            }

            CheckPlan pb;
            pb.name = "minimizer_battery";
            pb.suite = "minimizers";
            pb.samples = static_cast<long>(items.size());
            pb.tolerance = config.tol.inequality;
            pb.stats["expected_count"] = static_cast<double>(expected);
            pb.stats["constructed_count"] = static_cast<double>(items.size());
            uint64_t stb = stream(pb.name);
            auto items_ptr = std::make_shared<std::vector<Item>>(std::move(items));
            pb.kernel = [&pair, items_ptr, seed, stb](uint64_t i) {
                const Item& it = (*items_ptr)[i];
                Rng rng = Rng::for_sample(seed, stb, i);
                cplx c = i % 2 == 0 ? cplx{1.0}
                                    : cplx(0.5 + rng.uniform(), rng.uniform() - 0.5);
                BiShift bs = bishift_group(pair, it.h, it.chi, it.g, c);
                MinimizerReport r = minimizer_report(pair, bs.element);
                bool all = r.ds_equal && r.hb_equal && r.extremal_bipartial &&
                           r.partialiso_finv_extremal && r.bishift && r.consistent;
                SampleOutcome o;
                o.margin = all ? 0.0 : -1.0;
                if (!all) {
                    o.capture = true;
                    o.element_json = witness_json(pair, bs.element);
                }
                return o;
            };
            plans.push_back(std::move(pb));

            CheckPlan pg;
            pg.name = "generic_nonminimizer";
            pg.suite = "minimizers";
            pg.samples = config.samples;
            pg.tolerance = config.tol.inequality;
            uint64_t stg = stream(pg.name);
            pg.kernel = [&pair, seed, stg](uint64_t i) {
                SampleSpec spec{SampleSpec::Class::Generic, i % 2 == 1, 1};
                AlgebraElement x = sample_element(pair, spec, seed, stg, i);
                MinimizerReport r = minimizer_report(pair, x);
                bool none = !r.ds_equal && !r.hb_equal && !r.extremal_bipartial &&
                            !r.partialiso_finv_extremal && !r.bishift && r.consistent;
                double slack = r.ds_gap - 0.5;
                SampleOutcome o;
                o.margin = none ? slack : -1.0;
                if (o.margin < 0) {
                    o.capture = true;
                    o.element_json = witness_json(pair, x);
                }
                return o;
            };
            plans.push_back(std::move(pg));
        }

        if (pair.model == TwoBoxPair::Model::Group && enabled("square")) {
            auto subgroups = enumerate_subgroups(pair.group);
            struct Item {
                Subgroup h;
                Character chi;
                int g;
            };
            auto items = std::make_shared<std::vector<Item>>();
            for (const auto& h : subgroups)
                for (const auto& chi : one_dim_characters(h))
                    for (const auto& coset : right_cosets(h))
                        items->push_back(Item{h, chi, coset.front()});
            CheckPlan p;
            p.name = "square_relation_battery";
            p.suite = "square";
            p.samples = static_cast<long>(items->size());
            p.tolerance = config.tol.equality;
            p.kernel = [&pair, items](uint64_t i) {
                const Item& it = (*items)[i];
                BiShift bs = bishift_group(pair, it.h, it.chi, it.g, cplx{1.0});
                // Normalize to a partial isometry.
                std::vector<double> sv = singular_values(bs.element);
                AlgebraElement w = cplx{1.0 / sv[0]} * bs.element;
                SquareRelationResiduals r = square_relation_check(pair, w);
                double worst =
                    std::max({r.identity_residual, r.flatness_residual, r.one_norm_residual});
                return SampleOutcome{-worst, false, {}};
            };
            plans.push_back(std::move(p));
        }

        if (pair.model == TwoBoxPair::Model::Group && enabled("uniqueness")) {
            auto subgroups = enumerate_subgroups(pair.group);
            struct Item {
                ShiftCertificate bg, bth;
                Subgroup h;
                Character chi;
                int g;
            };
            auto items = std::make_shared<std::vector<Item>>();
            for (const auto& h : subgroups) {
                Biprojection b = biprojection_from_subgroup(pair, h);
                ShiftEnumeration se = enumerate_shifts(pair, b);
                auto chars = one_dim_characters(h);
                for (const auto& bg : se.plus_right)
                    for (size_t ci = 0; ci < se.minus_right.size(); ++ci)
                        items->push_back(
                            Item{bg, se.minus_right[ci], h, chars[ci], bg.coset_rep});
            }
            CheckPlan p;
            p.name = "uniqueness_battery";
            p.suite = "uniqueness";
            p.samples = static_cast<long>(items->size());
            p.tolerance = config.tol.inequality;
            p.kernel = [&pair, items](uint64_t i) {
                const Item& it = (*items)[i];
                UniquenessResult u = uniqueness_space(pair, it.bg, it.bth);
                if (u.dimension != 1) return SampleOutcome{-1.0, false, {}};
                BiShift twin = bishift_group_plus(pair, it.h, it.chi, it.g, cplx{1.0});
                // Collinearity of the null-space basis with the construction.
                const AlgebraElement& basis = u.basis[0];
                cplx num{};
                double den = 0;
                std::vector<cplx> bc = basis.coords(), tc = twin.element.coords();
                for (size_t k = 0; k < bc.size(); ++k) {
                    num += std::conj(bc[k]) * tc[k];
                    den += std::norm(bc[k]);
                }
                AlgebraElement resid = twin.element - cplx{num / den} * basis;
                double res = resid.frob() / std::max(twin.element.frob(), 1e-300);
                return SampleOutcome{-res, false, {}};
            };
            plans.push_back(std::move(p));
        }

        if (enabled("probes") && pair.model == TwoBoxPair::Model::Group) {
            int n = pair.group->order();
            bool prime = n >= 2;
            for (int d = 2; d * d <= n; ++d)
                if (n % d == 0) prime = false;
            bool cyclic = false;
            for (int x = 0; x < n && !cyclic; ++x)
                cyclic = pair.group->element_order(x) == n;
            if (prime && cyclic) {
                CheckPlan p;
                p.name = "probe_tao_sum";
                p.suite = "probes";
                p.samples = config.tao_budget;
                p.tolerance = 0;
                p.probe = true;
                uint64_t st = stream(p.name);
                p.kernel = [&pair, seed, st, n](uint64_t i) {
                    SampleSpec spec;
                    spec.cls = SampleSpec::Class::Sparse;
                    spec.minus_side = false;
                    spec.sparse_k = 1 + static_cast<int>(i % static_cast<uint64_t>(n));
                    AlgebraElement x = sample_element(pair, spec, seed, st, i);
                    double s1 = support_size(x);
                    double s2 = support_size(pair.fourier(x));
                    return SampleOutcome{s1 + s2, false, {}};
                };
                plans.push_back(std::move(p));
            }
        }

        if (enabled("probes") && (pair.model == TwoBoxPair::Model::FixedPoint ||
                                  pair.model == TwoBoxPair::Model::Spin)) {
            int n0 = pair.model == TwoBoxPair::Model::FixedPoint
                         ? pair.action.min_orbit_size()
                         : 1;
            CheckPlan p;
            p.name = "probe_hadamard_young_constants";
            p.suite = "probes";
            p.samples = config.samples;
            p.tolerance = 0;
            p.probe = true;
            uint64_t st = stream(p.name);
            // Identity-pair margins recorded as stats up front.
            {
                AlgebraElement one = AlgebraElement::identity(pair.plus);
                Mat had(pair.plus->dim, pair.plus->dim);
                for (int i = 0; i < pair.plus->dim; ++i)
                    for (int k = 0; k < pair.plus->dim; ++k)
                        had(i, k) = one.dense()(i, k) * one.dense()(i, k);
                AlgebraElement hd = AlgebraElement::from_matrix(pair.plus, had);
                double lhs = p_norm(hd, kPInf);  // (p, q, r) = (2, 2, inf)
                double rhs_n0 = (1.0 / n0) * p_norm(one, 2.0) * p_norm(one, 2.0);
                double rhs_n0sq = (1.0 / (double(n0) * n0)) * p_norm(one, 2.0) * p_norm(one, 2.0);
                p.stats["identity_margin_n0"] = (rhs_n0 - lhs) / std::max(rhs_n0, 1e-300);
                p.stats["identity_violation_factor_n0sq"] = lhs / rhs_n0sq;
            }
            p.kernel = [&pair, seed, st, n0](uint64_t i) {
                SampleSpec spec{SampleSpec::Class::Generic, false, 1};
                AlgebraElement a = sample_element(pair, spec, seed, st, 2 * i);
                AlgebraElement b = sample_element(pair, spec, seed, st, 2 * i + 1);
                Mat had(pair.plus->dim, pair.plus->dim);
                for (int r2 = 0; r2 < pair.plus->dim; ++r2)
                    for (int c2 = 0; c2 < pair.plus->dim; ++c2)
                        had(r2, c2) = a.dense()(r2, c2) * b.dense()(r2, c2);
                AlgebraElement hd = AlgebraElement::from_matrix(pair.plus, had);
                double worst = 1e300;
                for (const auto& t : default_young_grid()) {
                    double rhs = (1.0 / n0) * p_norm(a, t.p) * p_norm(b, t.q);
                    double lhs = p_norm(hd, t.r);
                    worst = std::min(worst, (rhs - lhs) / std::max(rhs, 1e-300));
                }
                return SampleOutcome{worst, false, {}};
            };
            plans.push_back(std::move(p));
        }

        for (const auto& plan : plans) {
            CheckReport r = execute_plan(pair, plan, config.seed, config.parallelism);
            if (r.name == "probe_tao_sum") {
                r.stats["observed_min_sum"] = r.min_margin;
                r.stats["predicted_min_sum"] = static_cast<double>(pair.group->order() + 1);
                r.min_margin = 0;
                r.max_violation = 0;
                r.histogram.assign(histogram_edges().size() + 1, 0);
            }
            if (r.name == "probe_hadamard_young_constants")
                r.stats["min_margin_n0_random"] = r.min_margin;
            reports.push_back(std::move(r));
        }
    }
    return reports;
}

bool suite_failed(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.probe && !r.pass) return true;
    return false;
}

}  // namespace ncup
