// Python bindings for the core operations: shapes, states, subspaces, the
// compositional constructors, the registry, the verifier, and recipe
// execution.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "forge/constructors.hpp"
#include "forge/io.hpp"
#include "forge/recipe.hpp"
#include "forge/registry.hpp"
#include "forge/verifier.hpp"

namespace py = pybind11;
using namespace forge;

namespace {

py::array_t<std::complex<double>> amplitudes_array(const PureState& s) {
    py::array_t<std::complex<double>> out(s.dim());
    std::complex<double>* dst = out.mutable_data();
    for (std::uint64_t i = 0; i < s.dim(); ++i) dst[i] = s[i];
    return out;
}

PureState state_from_array(const std::vector<int>& dims,
                           const py::array_t<std::complex<double>>& amps) {
    Shape shape(dims);
    const auto buf = amps.request();
    if (buf.ndim != 1 || static_cast<std::uint64_t>(buf.shape[0]) != shape.total_dim())
        throw ValidationError("amplitudes must be a 1-d array matching the shape");
    const auto* src = static_cast<const std::complex<double>*>(buf.ptr);
    return PureState(std::move(shape), std::vector<cplx>(src, src + buf.shape[0]));
}

py::array_t<std::complex<double>> matrix_array(const CMatrix& m) {
    py::array_t<std::complex<double>> out({m.rows(), m.cols()});
    std::complex<double>* dst = out.mutable_data();
    for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) dst[i] = m.data()[i];
    return out;
}

py::dict report_dict(const VerificationReport& rep) {
    py::dict d;
    d["target"] = rep.target;
    d["check"] = rep.kind;
    d["parameter"] = rep.parameter;
    d["tolerance"] = rep.tolerance;
    d["pass"] = rep.pass;
    d["worst_deviation"] = rep.worst_deviation;
    d["worst_subset"] = rep.worst_subset;
    d["subsets_checked"] = rep.subsets_checked;
    d["wall_ms"] = rep.wall_ms;
    return d;
}

VerifyOptions make_opts(double tol, int threads, std::uint64_t seed) {
    VerifyOptions o;
    o.tolerance = tol;
    o.threads = threads;
    o.seed = seed;
    return o;
}

}  // namespace

PYBIND11_MODULE(uniforge, m) {
    m.doc() = "uniform states and subspaces from composed code isometries";

    static py::exception<Error> exc(m, "ForgeError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            exc(e.what());
        }
    });

    py::class_<Shape>(m, "Shape")
        .def(py::init<std::vector<int>>())
        .def_property_readonly("dims", &Shape::dims)
        .def_property_readonly("total_dim", &Shape::total_dim)
        .def("linear_index",
             [](const Shape& s, const std::vector<int>& multi) { return s.linear_index(multi); })
        .def("multi_index",
             [](const Shape& s, std::uint64_t i) { return s.multi_index(i); })
        .def("__repr__", [](const Shape& s) { return "Shape" + s.to_string(); });

    py::class_<PureState>(m, "PureState")
        .def(py::init(&state_from_array), py::arg("dims"), py::arg("amplitudes"))
        .def_property_readonly("dims", [](const PureState& s) { return s.shape().dims(); })
        .def_property_readonly("amplitudes", &amplitudes_array)
        .def("__repr__", [](const PureState& s) {
            return "PureState" + s.shape().to_string();
        });

    py::class_<Subspace>(m, "Subspace")
        .def(py::init([](const std::vector<PureState>& basis) {
                 if (basis.empty()) throw ValidationError("Subspace: empty basis");
                 Shape shape = basis.front().shape();
                 return Subspace(std::move(shape), basis);
             }),
             py::arg("basis"))
        .def_property_readonly("dims", [](const Subspace& w) { return w.shape().dims(); })
        .def_property_readonly("dimension", &Subspace::dimension)
        .def_property_readonly("claimed_uniformity",
                               [](const Subspace& w) -> py::object {
                                   if (w.claimed_uniformity())
                                       return py::int_(*w.claimed_uniformity());
                                   return py::none();
                               })
        .def("basis", [](const Subspace& w, int j) { return w.basis(j); })
        .def("with_claimed_uniformity",
             [](const Subspace& w, int r) { return w.with_claimed_uniformity(r); })
        .def("__repr__", [](const Subspace& w) {
            return "Subspace(k=" + std::to_string(w.dimension()) + ", shape=" +
                   w.shape().to_string() + ")";
        });

    // core tensor operations
    m.def("tensor_product", &tensor_product);
    m.def("permute_parties", [](const PureState& s, const std::vector<int>& perm) {
        return permute_parties(s, perm);
    });
    m.def("reduce", [](const PureState& s, const std::vector<int>& subset) {
        return matrix_array(reduce(s, PartySubset(subset)).matrix);
    });
    m.def("reduce_cross",
          [](const PureState& a, const PureState& b, const std::vector<int>& subset) {
              return matrix_array(reduce_cross(a, b, PartySubset(subset)).matrix);
          });
    m.def("oracle_reduce", [](const PureState& s, const std::vector<int>& subset) {
        return matrix_array(oracle_reduce(s, PartySubset(subset)).matrix);
    });
    m.def("apply_isometry",
          [](const Subspace& v, const PureState& s, const std::vector<int>& targets) {
              return apply_isometry(v, s, PartySubset(targets));
          });
    m.def("apply_isometry_subspace",
          [](const Subspace& v, const Subspace& w, const std::vector<int>& targets) {
              return apply_isometry(v, w, PartySubset(targets));
          });

    // constructors
    m.def("glue", &glue);
    m.def("eliminate",
          [](const Subspace& w, int party) { return eliminate(w, party); });
    m.def("split", [](const Subspace& w, int party, int d1, int d2) {
        return split(w, party, d1, d2);
    });
    m.def("merge", [](const Subspace& w, const std::vector<std::pair<int, int>>& pairs) {
        return merge(w, pairs);
    });
    m.def("me_state", &me_state);
    m.def("me_subspace", &me_subspace);
    m.def("predict_combine", &predict_combine);
    m.def("predict_corollary1", &predict_corollary1);
    m.def("predict_combine_eliminate",
          [](int n1, int r1, int d1, int n2, int r2, int d2, int alpha, int beta) {
              const CombinePrediction p =
                  predict_combine_eliminate(n1, r1, d1, n2, r2, d2, alpha, beta);
              py::dict out;
              out["l"] = p.l;
              out["dim"] = p.dim;
              return out;
          });
    m.def("feasibility_check", [](const std::vector<int>& dims, int r) {
        return feasibility_check(Shape(dims), r);
    });

    // registry-backed combination
    m.def("combine", [](const std::string& c1, const std::string& c2) {
        const Registry& reg = Registry::builtin();
        return combine(reg.materialize_code(c1), reg.materialize_code(c2));
    });
    m.def("combine_eliminate",
          [](const std::string& c1, const std::string& c2, int alpha, int beta) {
              const Registry& reg = Registry::builtin();
              return combine_eliminate(reg.materialize_code(c1), reg.materialize_code(c2), alpha,
                                       beta);
          });

    // registry
    m.def("registry_names", [] { return Registry::builtin().names(); });
    m.def("registry_params", [](const std::string& name) {
        const CodeEntry& e = Registry::builtin().get(name);
        py::dict out;
        out["n"] = e.params.n;
        out["K"] = e.params.K;
        out["d"] = e.params.d;
        out["D"] = e.params.D;
        out["qmds"] = e.is_qmds();
        out["optional"] = e.optional;
        return out;
    });
    m.def("registry_materialize",
          [](const std::string& name) { return Registry::builtin().materialize(name); });

    // verifier
    m.def(
        "state_uniformity",
        [](const PureState& s, int r, double tol, int threads, std::uint64_t seed) {
            return report_dict(state_uniformity(s, r, make_opts(tol, threads, seed)));
        },
        py::arg("state"), py::arg("r"), py::arg("tol") = 1e-9, py::arg("threads") = 1,
        py::arg("seed") = 1);
    m.def(
        "subspace_uniformity",
        [](const Subspace& w, int r, double tol, int threads, std::uint64_t seed) {
            return report_dict(subspace_uniformity(w, r, make_opts(tol, threads, seed)));
        },
        py::arg("subspace"), py::arg("r"), py::arg("tol") = 1e-9, py::arg("threads") = 1,
        py::arg("seed") = 1);
    m.def(
        "verify_pure_code",
        [](const Subspace& w, int d, double tol, int threads, std::uint64_t seed) {
            return report_dict(verify_pure_code(w, d, make_opts(tol, threads, seed)));
        },
        py::arg("subspace"), py::arg("d"), py::arg("tol") = 1e-9, py::arg("threads") = 1,
        py::arg("seed") = 1);
    m.def(
        "max_uniformity",
        [](const PureState& s, double tol, int threads) {
            return max_uniformity(s, make_opts(tol, threads, 1));
        },
        py::arg("state"), py::arg("tol") = 1e-9, py::arg("threads") = 1);
    m.def(
        "me_subspace_check",
        [](const Subspace& w, int party, int trials, double tol, std::uint64_t seed) {
            return report_dict(me_subspace_check(w, party, trials, make_opts(tol, 1, seed)));
        },
        py::arg("subspace"), py::arg("party"), py::arg("trials") = 100, py::arg("tol") = 1e-9,
        py::arg("seed") = 1);

    // files and recipes
    m.def("write_state", &write_state);
    m.def("read_state", &read_state);
    m.def("write_subspace", &write_subspace);
    m.def("read_subspace", &read_subspace);
    m.def(
        "run_recipe",
        [](const std::string& recipe_json, const std::string& out_dir, double tol, int threads,
           std::uint64_t seed) {
            const Registry& reg = Registry::builtin();
            const RecipeGraph graph = parse_recipe(nlohmann::json::parse(recipe_json), reg);
            ExecOptions opts;
            opts.out_dir = out_dir;
            opts.tolerance = tol;
            opts.threads = threads;
            if (seed) opts.seed_override = seed;
            const ExecutionResult result = execute(graph, opts);
            py::dict out;
            out["pass"] = result.all_passed;
            py::list reports;
            for (const auto& rep : result.reports) reports.append(report_dict(rep));
            out["reports"] = reports;
            out["report_json"] = result.report_doc.dump(2);
            return out;
        },
        py::arg("recipe_json"), py::arg("out_dir") = std::string{}, py::arg("tol") = 1e-9,
        py::arg("threads") = 1, py::arg("seed") = 0);

    m.attr("__version__") = "1.0.0";
}
