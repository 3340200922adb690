#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncup/errors.hpp"
#include "ncup/harness.hpp"
#include "ncup/serialize.hpp"

namespace py = pybind11;
using namespace ncup;

namespace {

// Elements cross the boundary as coordinate vectors over the side's basis
// (function values / group-algebra coefficients / matrix entries / orbit
// coefficients), which keeps the interface uniform across models.
std::vector<cplx> to_coords(const py::array_t<std::complex<double>>& a) {
    auto buf = a.request();
    if (buf.ndim != 1) throw py::value_error("expected a 1-d complex array");
    const auto* p = static_cast<const std::complex<double>*>(buf.ptr);
    return std::vector<cplx>(p, p + buf.shape[0]);
}

py::array_t<std::complex<double>> from_coords_py(const std::vector<cplx>& c) {
    std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(c.size())};
    py::array_t<std::complex<double>> out(shape);
    auto buf = out.request();
    std::copy(c.begin(), c.end(), static_cast<std::complex<double>*>(buf.ptr));
    return out;
}

struct PyPair {
    TwoBoxPair pair;

    AlgebraPtr side(const std::string& s) const {
        if (s == "plus") return pair.plus;
        if (s == "minus") return pair.minus;
        throw py::value_error("side must be 'plus' or 'minus'");
    }
    AlgebraElement element(const std::string& s,
                           const py::array_t<std::complex<double>>& a) const {
        return AlgebraElement::from_coords(side(s), to_coords(a));
    }
};

Subgroup find_subgroup(const TwoBoxPair& pair, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    for (const auto& s : enumerate_subgroups(pair.group))
        if (s.members == members) return s;
    throw py::value_error("member list is not a subgroup");
}

}  // namespace

PYBIND11_MODULE(_ncup, m) {
    m.doc() = "two-sided Fourier calculus on finite quantum symmetries";

    py::class_<PyPair>(m, "Pair")
        .def_property_readonly("delta", [](const PyPair& p) { return p.pair.delta; })
        .def_property_readonly("delta0", [](const PyPair& p) { return p.pair.delta0; })
        .def_property_readonly("label", [](const PyPair& p) { return p.pair.label(); })
        .def("vec_dim",
             [](const PyPair& p, const std::string& s) { return p.side(s)->vec_dim(); })
        .def("fourier",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 return from_coords_py(p.pair.fourier(p.element(s, a)).coords());
             })
        .def("fourier_inv",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 return from_coords_py(p.pair.fourier_inv(p.element(s, a)).coords());
             })
        .def("contragredient",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 return from_coords_py(p.pair.contragredient(p.element(s, a)).coords());
             })
        .def("coproduct",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a,
                const py::array_t<std::complex<double>>& b) {
                 return from_coords_py(
                     p.pair.coproduct(p.element(s, a), p.element(s, b)).coords());
             })
        .def("p_norm",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a, double pp) {
                 return p_norm(p.element(s, a), pp);
             })
        .def("entropy",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 return entropy(p.element(s, a));
             })
        .def("support",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 return support_size(p.element(s, a));
             })
        .def("to_matrix",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 Mat mat = p.element(s, a).to_matrix();
                 std::vector<py::ssize_t> shape{mat.rows(), mat.cols()};
                 py::array_t<std::complex<double>> out(shape);
                 auto buf = out.request();
                 auto* ptr = static_cast<std::complex<double>*>(buf.ptr);
                 for (int i = 0; i < mat.rows(); ++i)
                     for (int j = 0; j < mat.cols(); ++j) ptr[i * mat.cols() + j] = mat(i, j);
                 return out;
             })
        .def("minimizer_report",
             [](const PyPair& p, const std::string& s,
                const py::array_t<std::complex<double>>& a) {
                 MinimizerReport r = minimizer_report(p.pair, p.element(s, a));
                 py::dict d;
                 d["ds_equal"] = r.ds_equal;
                 d["hb_equal"] = r.hb_equal;
                 d["extremal_bipartial"] = r.extremal_bipartial;
                 d["partialiso_finv_extremal"] = r.partialiso_finv_extremal;
                 d["bishift"] = r.bishift;
                 d["consistent"] = r.consistent;
                 d["ds_product"] = r.ds_product;
                 d["ds_gap"] = r.ds_gap;
                 d["hb_sum"] = r.hb_sum;
                 d["hb_gap"] = r.hb_gap;
                 return d;
             })
        .def("subgroups",
             [](const PyPair& p) {
                 if (p.pair.model != TwoBoxPair::Model::Group)
                     throw py::value_error("group model required");
                 std::vector<std::vector<int>> out;
                 for (const auto& s : enumerate_subgroups(p.pair.group))
                     out.push_back(s.members);
                 return out;
             })
        .def("characters",
             [](const PyPair& p, const std::vector<int>& members) {
                 Subgroup h = find_subgroup(p.pair, members);
                 std::vector<std::vector<std::complex<double>>> out;
                 for (const auto& chi : one_dim_characters(h)) {
                     std::vector<std::complex<double>> row;
                     for (int mmb : h.members) row.push_back(chi.value(mmb));
                     out.push_back(std::move(row));
                 }
                 return out;
             })
        .def("bishift",
             [](const PyPair& p, const std::vector<int>& members, int chi_index, int g,
                std::complex<double> c) {
                 Subgroup h = find_subgroup(p.pair, members);
                 auto chars = one_dim_characters(h);
                 if (chi_index < 0 || chi_index >= static_cast<int>(chars.size()))
                     throw py::value_error("character index out of range");
                 BiShift minus = bishift_group(p.pair, h, chars[chi_index], g, c);
                 BiShift plus = bishift_group_plus(p.pair, h, chars[chi_index], g, c);
                 py::dict d;
                 d["minus"] = from_coords_py(minus.element.coords());
                 d["plus"] = from_coords_py(plus.element.coords());
                 return d;
             });

    m.def("make_pair", [](const std::string& spec) { return PyPair{make_model(spec)}; });

    m.def("run_suite", [](const std::string& config_json) {
        SuiteConfig cfg = config_from_json(nlohmann::json::parse(config_json));
        auto reports = run_suite(cfg);
        py::dict d;
        d["report"] = report_to_json(cfg, reports).dump(2);
        d["failed"] = suite_failed(reports);
        return d;
    });

    py::register_exception<Error>(m, "NcupError");
}
