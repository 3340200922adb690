// ncup: verification lab for the two-sided Fourier calculus on finite
// quantum symmetries (group / spin / fixed-point models): norm inequalities,
// support and entropy uncertainty bounds, and their minimizers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ncup/errors.hpp"
#include "ncup/harness.hpp"
#include "ncup/serialize.hpp"

namespace fs = std::filesystem;
using namespace ncup;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot write " + path);
    out << text;
}

int run_verify(const SuiteConfig& config) {
    std::vector<CheckReport> reports = run_suite(config);
    for (const auto& r : reports)
        std::fprintf(stderr, "%-42s %-16s %-5s min_margin=%.3e (%ld samples, %.1f ms)\n",
                     r.name.c_str(), r.model.c_str(),
                     r.probe ? "probe" : (r.pass ? "pass" : "FAIL"), r.min_margin, r.samples,
                     r.wall_ms);
    std::string payload = config.format == "csv"
                              ? report_to_csv(reports)
                              : report_to_json(config, reports).dump(2) + "\n";
    if (config.out_path.empty())
        std::cout << payload;
    else
        write_text(config.out_path, payload);
    return suite_failed(reports) ? kExitCheckFailed : kExitOk;
}

int run_minimizers(const std::string& model, const std::string& out_path) {
    TwoBoxPair pair = make_model(model);
    if (pair.model != TwoBoxPair::Model::Group)
        fail("ModelMismatch", "minimizer enumeration needs a group model");

    ordered_json certs = ordered_json::array();
    long expected = 0;
    bool all_ok = true;
    for (const auto& h : enumerate_subgroups(pair.group)) {
        auto chars = one_dim_characters(h);
        auto cosets = right_cosets(h);
        expected += static_cast<long>(chars.size() * cosets.size());
        for (size_t ci = 0; ci < chars.size(); ++ci)
            for (const auto& coset : cosets) {
                BiShift bs = bishift_group(pair, h, chars[ci], coset.front(), cplx{1.0});
                MinimizerReport r = minimizer_report(pair, bs.element);
                bool ok = r.ds_equal && r.hb_equal && r.extremal_bipartial &&
                          r.partialiso_finv_extremal && r.bishift && r.consistent;
                all_ok = all_ok && ok;
                ordered_json c;
                c["kind"] = "bishift";
                c["group"] = model;
                c["subgroup"] = h.members;
                ordered_json chi;
                chi["den"] = chars[ci].den;
                chi["num"] = chars[ci].num;
                c["character"] = std::move(chi);
                c["coset_rep"] = coset.front();
                c["constant"] = ordered_json::array({1.0, 0.0});
                ordered_json checks;
                checks["ds_product"] = r.ds_product;
                checks["ds_gap"] = r.ds_gap;
                checks["hb_gap"] = r.hb_gap;
                checks["extremal_gap"] = r.extremal_gap;
                checks["x_flat"] = r.x_flat;
                checks["fx_flat"] = r.fx_flat;
                checks["all_equivalent"] = ok ? 1.0 : 0.0;
                c["checks"] = std::move(checks);
                c["element"] = element_to_json(pair, bs.element);
                certs.push_back(std::move(c));
            }
    }
    ordered_json j;
    j["model"] = model;
    j["count"] = certs.size();
    j["expected_count"] = expected;
    j["certificates"] = std::move(certs);
    std::string payload = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << payload;
    else
        write_text(out_path, payload);
    std::fprintf(stderr, "%ld bi-shift certificates (expected %ld), %s\n",
                 static_cast<long>(j["count"].get<size_t>()), expected,
                 all_ok ? "all equivalences hold" : "EQUIVALENCE FAILURES");
    return all_ok && static_cast<long>(j["count"].get<size_t>()) == expected ? kExitOk
                                                                             : kExitCheckFailed;
}

int run_uniqueness(const std::string& model, const std::string& subgroup_csv,
                   const std::string& subgroup_tilde_csv, int g, int chi, int h,
                   bool all_pairs, const std::string& out_path) {
    TwoBoxPair pair = make_model(model);
    if (pair.model != TwoBoxPair::Model::Group)
        fail("ModelMismatch", "uniqueness solving needs a group model");

    auto parse_members = [&](const std::string& csv) {
        std::vector<int> members;
        std::string cur;
        for (char ch : csv + ",") {
            if (ch == ',') {
                if (!cur.empty()) members.push_back(std::stoi(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        std::sort(members.begin(), members.end());
        return members;
    };
    auto find_subgroup = [&](std::vector<int> members) -> Subgroup {
        for (const auto& s : enumerate_subgroups(pair.group))
            if (s.members == members) return s;
        fail("ConfigError", "member list is not a subgroup");
    };

    Subgroup hgrp = find_subgroup(parse_members(subgroup_csv));
    Biprojection b = biprojection_from_subgroup(pair, hgrp);
    ShiftEnumeration shifts = enumerate_shifts(pair, b);

    Subgroup tgrp = hgrp;
    ShiftEnumeration tilde_shifts = shifts;
    if (!subgroup_tilde_csv.empty()) {
        tgrp = find_subgroup(parse_members(subgroup_tilde_csv));
        tilde_shifts = enumerate_shifts(pair, biprojection_from_subgroup(pair, tgrp));
    }
    if (h != 0 && !hgrp.contains(h))
        fail("ConfigError", "--h must name a subgroup element (the twist is trivial inside it)");

    auto solve_one = [&](const ShiftCertificate& bg, const ShiftCertificate& bth,
                         const Character& chi_used, int rep) {
        UniquenessResult u = uniqueness_space(pair, bg, bth);
        ordered_json row;
        row["coset_rep"] = rep;
        row["character"] = bth.character_index;
        row["dimension"] = u.dimension;
        if (u.dimension == 1) {
            BiShift twin = bishift_group_plus(pair, tgrp, chi_used, rep, cplx{1.0});
            std::vector<cplx> bc = u.basis[0].coords(), tc = twin.element.coords();
            cplx num{};
            double den = 0;
            for (size_t k = 0; k < bc.size(); ++k) {
                num += std::conj(bc[k]) * tc[k];
                den += std::norm(bc[k]);
            }
            AlgebraElement resid = twin.element - cplx{num / den} * u.basis[0];
            row["collinearity_residual"] = resid.frob() / twin.element.frob();
            row["basis"] = element_to_json(pair, u.basis[0]);
        }
        return row;
    };

    ordered_json rows = ordered_json::array();
    if (all_pairs) {
        auto tchars = one_dim_characters(tgrp);
        for (const auto& bg : shifts.plus_right)
            for (size_t ci = 0; ci < tilde_shifts.minus_right.size(); ++ci)
                rows.push_back(
                    solve_one(bg, tilde_shifts.minus_right[ci], tchars[ci], bg.coset_rep));
    } else {
        if (chi < 0 || chi >= static_cast<int>(tilde_shifts.minus_right.size()))
            fail("ConfigError", "--chi outside the character range");
        const ShiftCertificate* bg = nullptr;
        for (const auto& cand : shifts.plus_right)
            if (std::abs(cand.shift.diag()[g]) > 0.5) bg = &cand;
        if (!bg) fail("ConfigError", "--g outside the group");
        rows.push_back(solve_one(*bg, tilde_shifts.minus_right[chi],
                                 one_dim_characters(tgrp)[chi], bg->coset_rep));
    }
    ordered_json j;
    j["model"] = model;
    j["subgroup"] = hgrp.members;
    j["results"] = rows;
    std::string payload = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << payload;
    else
        write_text(out_path, payload);
    return kExitOk;
}

int run_dump(const std::string& model, const std::string& out_dir) {
    TwoBoxPair pair = make_model(model);
    fs::create_directories(out_dir);
    write_text(out_dir + "/fourier_plus_to_minus.csv", fourier_matrix_csv(pair, true));
    write_text(out_dir + "/fourier_minus_to_plus.csv", fourier_matrix_csv(pair, false));

    // Matrix realizations of the minus-side coordinate basis, stacked.
    {
        std::ostringstream os;
        char buf[96];
        for (int k = 0; k < pair.minus->vec_dim(); ++k) {
            std::vector<cplx> unit(pair.minus->vec_dim(), cplx{});
            unit[k] = 1.0;
            Mat m = AlgebraElement::from_coords(pair.minus, unit).to_matrix();
            for (int i = 0; i < m.rows(); ++i) {
                for (int j = 0; j < m.cols(); ++j) {
                    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", m(i, j).real(),
                                  m(i, j).imag());
                    os << buf << (j + 1 < m.cols() ? "," : "");
                }
                os << "\n";
            }
        }
        write_text(out_dir + "/minus_basis_realization.csv", os.str());
    }

    write_text(out_dir + "/jones_plus.json",
               element_to_json(pair, pair.jones_projection(true)).dump(2) + "\n");
    write_text(out_dir + "/jones_minus.json",
               element_to_json(pair, pair.jones_projection(false)).dump(2) + "\n");

    ordered_json manifest;
    manifest["model"] = model;
    manifest["delta"] = pair.delta;
    manifest["delta0"] = pair.delta0;
    manifest["plus_dim"] = pair.plus->dim;
    manifest["minus_dim"] = pair.minus->dim;
    manifest["vec_dim"] = pair.plus->vec_dim();

    if (pair.model == TwoBoxPair::Model::Group) {
        ordered_json bips = ordered_json::array();
        for (const auto& h : enumerate_subgroups(pair.group)) {
            Biprojection b = biprojection_from_subgroup(pair, h);
            ordered_json row;
            row["subgroup"] = h.members;
            row["element"] = element_to_json(pair, b.element);
            row["tilde"] = element_to_json(pair, b.tilde);
            bips.push_back(std::move(row));
        }
        write_text(out_dir + "/biprojections.json", bips.dump(2) + "\n");
    }
    write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical lab for noncommutative uncertainty principles"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the inequality suite");
    std::vector<std::string> models;
    std::string config_path, out_path, format = "json";
    std::vector<std::string> suites;
    long samples = 500;
    uint64_t seed = kDefaultSeed;
    int parallel = 1;
    double tol_eq = -1, tol_ineq = -1;
    verify->add_option("--model", models, "model spec (repeatable)");
    verify->add_option("--config", config_path, "JSON config file (flags override)");
    verify->add_option("--samples", samples, "samples per check");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--suite", suites, "suite filter (repeatable)");
    verify->add_option("--out", out_path, "report path (stdout when omitted)");
    verify->add_option("--format", format, "json|csv");
    verify->add_option("--parallel", parallel, "worker threads");
    verify->add_option("--tol", tol_eq, "equality tolerance override");
    verify->add_option("--tol-inequality", tol_ineq, "inequality tolerance override");

    auto* minim = app.add_subcommand("minimizers", "enumerate bi-shift certificates");
    std::string m_model, m_out;
    minim->add_option("--model", m_model, "group model spec")->required();
    minim->add_option("--out", m_out, "certificate list path");

    auto* uniq = app.add_subcommand("uniqueness", "solve the support-constrained space");
    uniq->set_help_flag("--help", "print help");  // frees -h for the twist flag
    std::string u_model, u_subgroup, u_subgroup_tilde, u_out;
    int u_g = 0, u_chi = 0, u_h = 0;
    bool u_all = false;
    uniq->add_option("--model", u_model, "group model spec")->required();
    uniq->add_option("--subgroup", u_subgroup, "comma-separated members")->required();
    uniq->add_option("--subgroup-tilde", u_subgroup_tilde,
                     "members for the Fourier-side base (mismatch demo)");
    uniq->add_option("--g", u_g, "coset representative");
    uniq->add_option("--chi", u_chi, "character index");
    uniq->add_option("--h", u_h, "twist element (must lie in the subgroup)");
    uniq->add_flag("--all-pairs", u_all, "solve every (coset, character) pair");
    uniq->add_option("--out", u_out, "output path");

    auto* dump = app.add_subcommand("dump", "write Fourier data for external audit");
    std::string d_model, d_out = ".";
    dump->add_option("--model", d_model, "model spec")->required();
    dump->add_option("--out", d_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            SuiteConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) fail("ConfigError", "cannot open " + config_path);
                nlohmann::json j;
                in >> j;
                cfg = config_from_json(j);
            }
            if (!models.empty()) cfg.models = models;
            if (verify->count("--samples")) cfg.samples = samples;
            if (verify->count("--seed")) cfg.seed = seed;
            if (verify->count("--suite")) cfg.suites = suites;
            if (verify->count("--out")) cfg.out_path = out_path;
            if (verify->count("--format")) cfg.format = format;
            if (verify->count("--parallel")) cfg.parallelism = parallel;
            if (tol_eq > 0) cfg.tol.equality = tol_eq;
            if (tol_ineq > 0) cfg.tol.inequality = tol_ineq;
            if (cfg.models.empty()) fail("ConfigError", "at least one --model is required");
            if (cfg.format != "json" && cfg.format != "csv")
                fail("ConfigError", "format must be json or csv");
            return run_verify(cfg);
        }
        if (minim->parsed()) return run_minimizers(m_model, m_out);
        if (uniq->parsed())
            return run_uniqueness(u_model, u_subgroup, u_subgroup_tilde, u_g, u_chi, u_h, u_all,
                                  u_out);
        if (dump->parsed()) return run_dump(d_model, d_out);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (e.kind == "MismatchedBiprojection" || e.kind == "UniquenessViolated")
            return kExitCheckFailed;
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
