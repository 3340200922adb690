#include "ncup/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncup/errors.hpp"

namespace ncup {

namespace {

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigError", "cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

ordered_json complex_to_json(const cplx& v) { return ordered_json::array({v.real(), v.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

}  // namespace

FiniteGroup group_from_json(const nlohmann::json& j) {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
        fail("NotLatinSquare", "declared order disagrees with the table");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup::from_table(table, std::move(labels));
}

ordered_json group_to_json(const FiniteGroup& g) {
    ordered_json j;
    j["order"] = g.order();
    std::vector<std::vector<int>> table(g.order(), std::vector<int>(g.order()));
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) table[a][b] = g.mul(a, b);
    j["table"] = table;
    j["labels"] = g.labels();
    return j;
}

PermutationAction action_from_json(const nlohmann::json& j) {
    PermutationAction a;
    const auto& gj = j.at("group");
    a.group = std::make_shared<const FiniteGroup>(
        gj.is_string() ? builtin_group(gj.get<std::string>()) : group_from_json(gj));
    a.points = j.at("points").get<int>();
    a.perms = j.at("perms").get<std::vector<std::vector<int>>>();
    a.validate();
    return a;
}

ordered_json element_to_json(const TwoBoxPair& pair, const AlgebraElement& x) {
    ordered_json j;
    j["algebra"] = x.algebra().label;
    j["side"] = pair.on_plus(x) ? "plus" : "minus";
    if (pair.model == TwoBoxPair::Model::Group && pair.on_minus(x)) {
        ordered_json coeffs = ordered_json::object();
        std::vector<cplx> c = x.coords();
        for (size_t g = 0; g < c.size(); ++g)
            if (c[g] != cplx{}) coeffs[std::to_string(g)] = complex_to_json(c[g]);
        j["coeffs"] = std::move(coeffs);
        return j;
    }
    if (x.diagonal_storage()) {
        ordered_json data = ordered_json::array();
        for (const auto& v : x.diag()) data.push_back(complex_to_json(v));
        j["data"] = std::move(data);
        return j;
    }
    ordered_json rows = ordered_json::array();
    const Mat& m = x.dense();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    j["data"] = std::move(rows);
    return j;
}

AlgebraElement element_from_json(const TwoBoxPair& pair, const nlohmann::json& j) {
    bool plus = j.at("side").get<std::string>() == "plus";
    AlgebraPtr alg = plus ? pair.plus : pair.minus;
    if (j.contains("coeffs")) {
        if (pair.model != TwoBoxPair::Model::Group || plus)
            fail("ConfigError", "coefficient form is for minus-side group elements");
        std::vector<cplx> c(alg->vec_dim(), cplx{});
        for (const auto& [key, val] : j.at("coeffs").items()) {
            int g = std::stoi(key);
            if (g < 0 || g >= alg->vec_dim()) fail("ConfigError", "coefficient index range");
            c[g] = complex_from_json(val);
        }
        return pair.minus_from_coeffs(c);
    }
    const auto& data = j.at("data");
    if (alg->diagonal_storage()) {
        std::vector<cplx> d;
        for (const auto& v : data) d.push_back(complex_from_json(v));
        if (static_cast<int>(d.size()) != alg->dim) fail("ConfigError", "diagonal length");
        if (!alg->basis.empty()) {
            Mat m(alg->dim, alg->dim);
            for (int i = 0; i < alg->dim; ++i) m(i, i) = d[i];
            return AlgebraElement::from_matrix(alg, m);
        }
        return AlgebraElement::from_diagonal(alg, std::move(d));
    }
    Mat m(alg->dim, alg->dim);
    for (int i = 0; i < alg->dim; ++i)
        for (int k = 0; k < alg->dim; ++k) m(i, k) = complex_from_json(data.at(i).at(k));
    return AlgebraElement::from_matrix(alg, m);
}

TwoBoxPair make_model(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) fail("ConfigError", "bad model spec '" + spec + "'");
    std::string head = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (head == "group") {
        if (!rest.empty() && rest[0] == '@') {
            return TwoBoxPair::group_model(std::make_shared<const FiniteGroup>(
                group_from_json(load_json_file(rest.substr(1)))));
        }
        return TwoBoxPair::group_model(std::make_shared<const FiniteGroup>(builtin_group(rest)));
    }
    if (head == "spin") {
        int n = 0;
        try {
            n = std::stoi(rest);
        } catch (...) {
            fail("ConfigError", "bad spin size '" + rest + "'");
        }
        return TwoBoxPair::spin_model(n);
    }
    if (head == "fixedpoint") {
        if (!rest.empty() && rest[0] == '@')
            return TwoBoxPair::fixed_point_model(action_from_json(load_json_file(rest.substr(1))));
        if (rest.rfind("trivial:", 0) == 0) {
            int n = std::stoi(rest.substr(8));
            auto g = std::make_shared<const FiniteGroup>(cyclic_group(1));
            return TwoBoxPair::fixed_point_model(PermutationAction::trivial(g, n));
        }
        const std::string suffix = "-regular";
        if (rest.size() > suffix.size() &&
            rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
            std::string gspec = rest.substr(0, rest.size() - suffix.size());
            auto g = std::make_shared<const FiniteGroup>(builtin_group(gspec));
            return TwoBoxPair::fixed_point_model(PermutationAction::regular(g));
        }
        fail("ConfigError", "bad fixedpoint spec '" + rest + "'");
    }
    fail("ConfigError", "unknown model family '" + head + "'");
}

SuiteConfig config_from_json(const nlohmann::json& j) {
    SuiteConfig c;
    if (j.contains("models")) c.models = j.at("models").get<std::vector<std::string>>();
    if (j.contains("samples")) c.samples = j.at("samples").get<long>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("parallelism")) c.parallelism = j.at("parallelism").get<int>();
    if (j.contains("suites")) c.suites = j.at("suites").get<std::vector<std::string>>();
    if (j.contains("tao_budget")) c.tao_budget = j.at("tao_budget").get<long>();
    if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (t.contains("equality")) c.tol.equality = t.at("equality").get<double>();
        if (t.contains("inequality")) c.tol.inequality = t.at("inequality").get<double>();
        if (t.contains("rank")) c.tol.rank = t.at("rank").get<double>();
    }
    if (c.samples < 1) fail("ConfigError", "samples must be >= 1");
    if (c.parallelism < 1) fail("ConfigError", "parallelism must be >= 1");
    if (c.format != "json" && c.format != "csv") fail("ConfigError", "format must be json or csv");
    return c;
}

ordered_json config_to_json(const SuiteConfig& c) {
    ordered_json j;
    j["models"] = c.models;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["parallelism"] = c.parallelism;
    j["suites"] = c.suites;
    j["tolerances"] = ordered_json{{"equality", c.tol.equality},
                                   {"inequality", c.tol.inequality},
                                   {"rank", c.tol.rank}};
    j["tao_budget"] = c.tao_budget;
    j["format"] = c.format;
    // Fixed exponent grids; p = 2 and p = inf anchor the equality cases.
    ordered_json pg = ordered_json::array();
    for (double p : default_p_grid()) pg.push_back(p == kPInf ? ordered_json("inf") : ordered_json(p));
    j["p_grid"] = std::move(pg);
    ordered_json yg = ordered_json::array();
    for (const auto& t : default_young_grid()) {
        ordered_json row = ordered_json::array();
        for (double v : {t.p, t.q, t.r}) row.push_back(v == kPInf ? ordered_json("inf") : ordered_json(v));
        yg.push_back(std::move(row));
    }
    j["young_grid"] = std::move(yg);
    return j;
}

ordered_json report_to_json(const SuiteConfig& config, const std::vector<CheckReport>& reports) {
    ordered_json j;
    j["config"] = config_to_json(config);
    j["notes"] = ordered_json::array(
        {"entropy bound evaluated in the normalized form H(|x|^2)+H(|F(x)|^2) >= 2 log delta0; "
         "the homogeneous display carries the squared 2-norm prefactor",
         "the Hadamard-product inequality is probed against both the 1/n0^2 and 1/n0 "
         "constants; the identity pair certifies 1/n0 and refutes 1/n0^2"});
    ordered_json rows = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json row;
        row["name"] = r.name;
        row["model"] = r.model;
        row["suite"] = r.suite;
        row["samples"] = r.samples;
        row["tolerance"] = r.tolerance;
        row["min_margin"] = r.min_margin;
        row["max_violation"] = r.max_violation;
        row["histogram"] = r.histogram;
        row["probe"] = r.probe;
        row["verdict"] = r.probe ? "probe" : (r.pass ? "pass" : "fail");
        ordered_json stats = ordered_json::object();
        for (const auto& [k, v] : r.stats) stats[k] = v;
        row["stats"] = std::move(stats);
        ordered_json ces = ordered_json::array();
        for (const auto& ce : r.counterexamples) {
            ordered_json cj;
            cj["index"] = ce.index;
            cj["master_seed"] = ce.master_seed;
            cj["margin"] = ce.margin;
            cj["element"] =
                nlohmann::json::parse(ce.element_json.empty() ? "null" : ce.element_json);
            ces.push_back(std::move(cj));
        }
        row["counterexamples"] = std::move(ces);
        rows.push_back(std::move(row));
    }
    j["checks"] = std::move(rows);
    return j;
}

std::string report_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << "name,model,samples,min_margin,max_violation,verdict\n";
    char buf[64];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%.17g", r.min_margin);
        os << r.name << "," << r.model << "," << r.samples << "," << buf << ",";
        std::snprintf(buf, sizeof buf, "%.17g", r.max_violation);
        os << buf << "," << (r.probe ? "probe" : (r.pass ? "pass" : "fail")) << "\n";
    }
    return os.str();
}

std::string fourier_matrix_csv(const TwoBoxPair& pair, bool from_plus) {
    const Mat& f = pair.fourier_matrix(from_plus);
    std::ostringstream os;
    char buf[96];
    for (int i = 0; i < f.rows(); ++i) {
        for (int j = 0; j < f.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g%+.17gi", f(i, j).real(), f(i, j).imag());
            os << buf << (j + 1 < f.cols() ? "," : "");
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace ncup
