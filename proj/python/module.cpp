// Python bindings for the main operations: finite fields, affine-geometry
// inner codes, expander graphs and their double covers, Tanner codes, the
// local corrector and the experiment drivers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "elcc/experiment.hpp"
#include "elcc/local_corrector.hpp"
#include "elcc/runner.hpp"
#include "elcc/stats.hpp"

namespace py = pybind11;
using namespace elcc;

namespace {

struct PyField {
    std::shared_ptr<const Field> field;
};

struct PyGeometry {
    std::shared_ptr<const AffineGeometry> geometry;
};

struct PyInner {
    InnerCode inner;
};

struct PyGraph {
    std::shared_ptr<const RegularGraph> graph;
};

struct PyTanner {
    std::shared_ptr<TannerCode> code;
};

CorrectionParams params_from_dict(const py::dict& d) {
    CorrectionParams p;
    if (d.contains("gamma")) p.gamma = d["gamma"].cast<double>();
    if (d.contains("zeta")) p.zeta = d["zeta"].cast<double>();
    p.L1 = d["L1"].cast<std::uint32_t>();
    p.L2 = d["L2"].cast<std::uint32_t>();
    p.C = d.contains("C") ? d["C"].cast<std::uint32_t>() : std::max(1u, p.L2 / std::max(1u, p.L1));
    return p;
}

py::dict planner_dict(const PlannerReport& r) {
    py::dict out;
    out["gamma"] = r.params.gamma;
    out["zeta"] = r.params.zeta;
    out["L1"] = r.params.L1;
    out["L2"] = r.params.L2;
    out["C"] = r.params.C;
    out["q0"] = r.q0;
    out["q_padded"] = r.q_padded;
    out["threshold"] = r.threshold;
    out["rho_bound"] = r.rho_bound;
    out["rho_feasible"] = r.rho_feasible;
    out["expansion_feasible"] = r.expansion_feasible;
    out["feasible"] = r.feasible;
    out["epsilon"] = r.epsilon;
    out["predicted_leaf_reads"] = r.predicted_leaf_reads;
    out["warnings"] = r.warnings;
    return out;
}

py::dict correction_dict(const CorrectionResult& r) {
    py::dict out;
    out["position"] = r.position;
    out["symbol"] = r.symbol;
    out["leaf_reads"] = r.leaf_reads;
    out["symbol_reads"] = r.symbol_reads;
    out["distinct_subtrees"] = r.distinct_subtrees;
    out["ambiguous"] = r.ambiguous;
    out["ambiguous_subtrees"] = r.ambiguous_subtrees;
    py::list scores;
    for (std::size_t a = 0; a < r.sample_scores.unnormalized.size(); ++a)
        scores.append(py::make_tuple(a, r.sample_scores.unnormalized[a]));
    out["sample_scores"] = scores;
    return out;
}

}  // namespace

PYBIND11_MODULE(elcc, m) {
    m.doc() = "expander codes with local correction: fields, geometries, graphs, Tanner codes and experiments";

    py::class_<PyField>(m, "Field")
        .def(py::init([](std::uint32_t p, std::uint32_t ell) { return PyField{make_field(p, ell)}; }),
             py::arg("p"), py::arg("ell") = 1)
        .def_property_readonly("order", [](const PyField& f) { return f.field->order(); })
        .def_property_readonly("characteristic", [](const PyField& f) { return f.field->characteristic(); })
        .def_property_readonly("modulus", [](const PyField& f) { return f.field->modulus(); })
        .def("__repr__", [](const PyField& f) { return f.field->description(); })
        .def("add", [](const PyField& f, std::uint32_t a, std::uint32_t b) { return f.field->add(a, b); })
        .def("sub", [](const PyField& f, std::uint32_t a, std::uint32_t b) { return f.field->sub(a, b); })
        .def("mul", [](const PyField& f, std::uint32_t a, std::uint32_t b) { return f.field->mul(a, b); })
        .def("neg", [](const PyField& f, std::uint32_t a) { return f.field->neg(a); })
        .def("inv", [](const PyField& f, std::uint32_t a) { return f.field->inv(a); })
        .def("enumerate", [](const PyField& f) {
            std::vector<std::uint32_t> out;
            for (const auto& e : f.field->enumerate()) out.push_back(e.value);
            return out;
        });

    py::class_<PyGeometry>(m, "AffineGeometry")
        .def(py::init([](std::uint32_t h, std::uint32_t m_dim, std::uint32_t r) {
                 return PyGeometry{AffineGeometry::enumerate_flats(h, m_dim, r)};
             }),
             py::arg("h"), py::arg("m"), py::arg("r") = 1)
        .def_property_readonly("h", [](const PyGeometry& g) { return g.geometry->order(); })
        .def_property_readonly("m", [](const PyGeometry& g) { return g.geometry->ambient_dimension(); })
        .def_property_readonly("r", [](const PyGeometry& g) { return g.geometry->flat_dimension(); })
        .def_property_readonly("points", [](const PyGeometry& g) { return g.geometry->point_count(); })
        .def_property_readonly("flat_count", [](const PyGeometry& g) { return g.geometry->flat_count(); })
        .def("flats", [](const PyGeometry& g) { return g.geometry->flats(); })
        .def("flats_through", [](const PyGeometry& g, std::uint32_t point) {
            return g.geometry->flats_through().at(point);
        });

    py::class_<PyInner>(m, "InnerCode")
        .def_property_readonly("length", [](const PyInner& i) { return i.inner.code->length(); })
        .def_property_readonly("dimension", [](const PyInner& i) { return i.inner.code->dimension(); })
        .def_property_readonly("rate", [](const PyInner& i) { return i.inner.code->rate(); })
        .def_property_readonly("q0", [](const PyInner& i) { return i.inner.reconstruction->query_count(); })
        .def_property_readonly("s0", [](const PyInner& i) { return i.inner.reconstruction->smoothness(); })
        .def_property_readonly("degenerate",
                               [](const PyInner& i) { return i.inner.reconstruction->degenerate(); })
        .def("encode", [](const PyInner& i, const std::vector<std::uint32_t>& msg) { return i.inner.code->encode(msg); })
        .def("is_codeword",
             [](const PyInner& i, const std::vector<std::uint32_t>& word) { return i.inner.code->is_codeword(word); })
        .def("min_distance", [](PyInner& i) {
            return const_cast<LinearCode*>(i.inner.code.get())->min_distance_bruteforce();
        })
        .def(
            "reconstruct_at",
            [](const PyInner& i, const std::vector<std::uint32_t>& word, std::uint32_t x, std::uint64_t seed) {
                Rng rng(seed);
                const QuerySet q = i.inner.reconstruction->sample_queries(x, rng);
                std::vector<std::uint32_t> values;
                for (std::uint32_t y : q.positions) values.push_back(word.at(y));
                return i.inner.reconstruction->reconstruct(values, x, q.provenance);
            },
            py::arg("word"), py::arg("position"), py::arg("seed"));

    m.def(
        "build_inner_code",
        [](const PyGeometry& g, std::uint32_t p) { return PyInner{build_inner_code(g.geometry, p)}; },
        py::arg("geometry"), py::arg("p"));
    m.def(
        "single_parity_code",
        [](std::uint32_t p, std::size_t d) { return PyInner{build_single_parity_code(p, d)}; }, py::arg("p"),
        py::arg("d"));

    py::class_<PyGraph>(m, "Graph")
        .def_property_readonly("n", [](const PyGraph& g) { return g.graph->vertex_count(); })
        .def_property_readonly("d", [](const PyGraph& g) { return g.graph->degree(); })
        .def("second_eigenvalue", [](const PyGraph& g) { return g.graph->second_eigenvalue(); })
        .def("neighbor",
             [](const PyGraph& g, std::uint32_t v, std::uint32_t port) { return g.graph->neighbor(v, port); })
        .def("connected", [](const PyGraph& g) { return g.graph->connected(); });

    m.def(
        "random_regular",
        [](std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
            return PyGraph{std::make_shared<RegularGraph>(RegularGraph::random_regular(n, d, seed))};
        },
        py::arg("n"), py::arg("d"), py::arg("seed"));
    m.def("complete", [](std::uint32_t n) {
        return PyGraph{std::make_shared<RegularGraph>(RegularGraph::complete(n))};
    });
    m.def("cycle", [](std::uint32_t n) {
        return PyGraph{std::make_shared<RegularGraph>(RegularGraph::cycle(n))};
    });
    m.def("ramanujan_bound", &RegularGraph::ramanujan_bound);

    m.def("spectrum_check", [](const PyGraph& g) {
        const EdgeWalkSpectrumReport r = edge_walk_spectrum_check(*g.graph);
        py::dict out;
        out["pass"] = r.pass;
        out["base_spectrum"] = r.base_spectrum;
        out["edge_spectrum"] = r.edge_spectrum;
        out["max_residual"] = r.max_residual;
        out["operator_rank"] = r.operator_rank;
        out["shift_block_rank"] = r.shift_block_rank;
        return out;
    });

    py::class_<PyTanner>(m, "TannerCode")
        .def(py::init([](const PyInner& inner, const PyGraph& graph) {
                 auto cover = std::make_shared<DoubleCover>(graph.graph);
                 return PyTanner{std::make_shared<TannerCode>(TannerCode::build(inner.inner, cover))};
             }),
             py::arg("inner"), py::arg("graph"))
        .def_property_readonly("length", [](const PyTanner& t) { return t.code->length(); })
        .def_property_readonly("warnings", [](const PyTanner& t) { return t.code->warnings(); })
        .def_property_readonly("q0", [](const PyTanner& t) { return t.code->inner_scheme().query_count(); })
        .def_property_readonly("tree_arity", [](const PyTanner& t) { return t.code->tree_scheme().query_count(); })
        .def("zero_codeword", [](const PyTanner& t) { return t.code->zero_codeword(); })
        .def("is_codeword",
             [](const PyTanner& t, const std::vector<std::uint8_t>& word) { return t.code->is_codeword(word); })
        .def("local_view", [](const PyTanner& t, const std::vector<std::uint8_t>& word, std::uint32_t side,
                              std::uint32_t vertex) { return t.code->local_view(word, side, vertex); })
        .def("compute_dimension",
             [](PyTanner& t) {
                 t.code->compute_dimension_and_generator();
                 return *t.code->dimension();
             })
        .def("encode", [](const PyTanner& t, const std::vector<std::uint32_t>& msg) { return t.code->encode(msg); })
        .def("random_codeword",
             [](const PyTanner& t, std::uint64_t seed) {
                 Rng rng(seed);
                 return t.code->random_codeword(rng);
             })
        .def(
            "correct",
            [](const PyTanner& t, const std::vector<std::uint8_t>& word, std::uint32_t position,
               const py::dict& params, std::uint64_t seed) {
                Rng rng(seed);
                return correction_dict(correct(*t.code, word, position, params_from_dict(params), rng));
            },
            py::arg("word"), py::arg("position"), py::arg("params"), py::arg("seed"));

    m.def(
        "plan_parameters",
        [](double rho, std::uint32_t q0, std::uint32_t q_padded, std::uint32_t d, double lambda_value,
           double gamma, double zeta, std::uint32_t n, std::optional<std::uint32_t> c_override) {
            return planner_dict(plan_parameters(rho, q0, q_padded, d, lambda_value, gamma, zeta, n, c_override));
        },
        py::arg("rho"), py::arg("q0"), py::arg("q_padded"), py::arg("d"), py::arg("lambda_value"),
        py::arg("gamma"), py::arg("zeta"), py::arg("n"), py::arg("c_override") = std::nullopt);

    m.def(
        "corrupt",
        [](const std::vector<std::uint8_t>& word, double rho, std::uint32_t p, std::uint64_t seed) {
            auto field = make_field(p, 1);
            NoiseModel model{NoiseModel::Kind::kRandomPositions, rho, {}};
            Rng rng(seed);
            const CorruptionOutcome outcome = corrupt(word, model, *field, rng);
            return py::make_tuple(outcome.word, outcome.positions);
        },
        py::arg("word"), py::arg("rho"), py::arg("p"), py::arg("seed"));

    m.def(
        "success_curve",
        [](const PyTanner& t, const py::dict& params, const std::vector<double>& grid, std::uint64_t trials,
           std::uint64_t seed) {
            const auto rows = success_curve(*t.code, params_from_dict(params), grid, trials, seed);
            py::list out;
            for (const auto& row : rows) {
                py::dict r;
                r["rho"] = row.rho;
                r["successes"] = row.successes;
                r["trials"] = row.trials;
                r["mean_queries"] = row.mean_queries;
                r["wilson_low"] = row.wilson_low;
                out.append(r);
            }
            return out;
        },
        py::arg("code"), py::arg("params"), py::arg("rho_grid"), py::arg("trials"), py::arg("seed"));

    m.def(
        "walk_tail_check",
        [](const PyGraph& g, const std::vector<std::uint32_t>& corrupted, double gamma, std::uint32_t length,
           std::uint64_t trials, std::uint64_t seed) {
            DoubleCover cover(g.graph);
            const WalkTailReport r =
                walk_tail_check(cover, corrupted, gamma, length, trials, g.graph->second_eigenvalue(), seed);
            py::dict out;
            out["gamma"] = r.gamma;
            out["L"] = r.walk_length;
            out["empirical_tail"] = r.empirical_tail;
            out["kl_bound"] = r.kl_bound;
            out["pass"] = r.pass;
            out["bound_vacuous"] = r.bound_vacuous;
            out["lambda_value"] = r.lambda;
            out["delta"] = r.delta;
            return out;
        },
        py::arg("graph"), py::arg("corrupted"), py::arg("gamma"), py::arg("length"), py::arg("trials"),
        py::arg("seed"));

    m.def("kl", &kl_divergence, py::arg("gamma"), py::arg("delta"));
    m.def("minimum_outer_depth", &minimum_outer_depth, py::arg("n"), py::arg("d"));
}
