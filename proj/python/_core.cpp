// Python bindings for the main pipeline operations: lifting, neighborhood
// expansion, encodings, bundles, route counting, and the training demo.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopse/pipeline.hpp"
#include "hopse/routes.hpp"

namespace py = pybind11;
using namespace hopse;

namespace {

CombinatorialComplex build_from_specs(
    const std::vector<std::pair<std::vector<VertexId>, int>>& specs) {
    std::vector<CellSpec> cells;
    cells.reserve(specs.size());
    for (const auto& [vertices, rank] : specs) cells.push_back({vertices, rank});
    return build_complex(cells);
}

std::vector<NeighborhoodFunction> resolve_nfs(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) {
        auto name = spec.cast<std::string>();
        try {
            return taxonomy_set(name);
        } catch (const UnknownSet&) {
            return {NeighborhoodFunction::parse(name)};
        }
    }
    std::vector<NeighborhoodFunction> nfs;
    for (auto item : spec.cast<py::iterable>()) {
        if (py::isinstance<py::str>(item))
            nfs.push_back(NeighborhoodFunction::parse(item.cast<std::string>()));
        else
            nfs.push_back(item.cast<NeighborhoodFunction>());
    }
    return nfs;
}

std::vector<PseKind> resolve_kinds(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) return PseKind::parse_list(spec.cast<std::string>());
    std::vector<PseKind> kinds;
    for (auto item : spec.cast<py::iterable>())
        kinds.push_back(PseKind::parse(item.cast<std::string>()));
    return kinds;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "combinatorial-complex encodings without higher-order message passing";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UnknownSet>(m, "UnknownSetError", PyExc_ValueError);

    py::class_<InputGraph>(m, "InputGraph")
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
                 return InputGraph::make(n, edges);
             }),
             py::arg("num_vertices"), py::arg("edges"))
        .def_readonly("num_vertices", &InputGraph::num_vertices)
        .def_readonly("edges", &InputGraph::edges)
        .def("__repr__", [](const InputGraph& g) {
            return "InputGraph(n=" + std::to_string(g.num_vertices) + ", m=" +
                   std::to_string(g.edges.size()) + ")";
        });

    py::class_<CombinatorialComplex>(m, "CombinatorialComplex")
        .def_property_readonly("num_cells", &CombinatorialComplex::num_cells)
        .def_property_readonly("num_vertices", &CombinatorialComplex::num_vertices)
        .def_property_readonly("dim", &CombinatorialComplex::dim)
        .def("cells_of_rank", &CombinatorialComplex::cells_of_rank, py::arg("rank"))
        .def("cell_vertices",
             [](const CombinatorialComplex& cc, CellId id) { return cc.cell(id).vertices; })
        .def("cell_rank",
             [](const CombinatorialComplex& cc, CellId id) { return cc.cell(id).rank; })
        .def("cells",
             [](const CombinatorialComplex& cc) {
                 std::vector<std::pair<int, std::vector<VertexId>>> out;
                 for (const auto& cell : cc.cells()) out.emplace_back(cell.rank, cell.vertices);
                 return out;
             })
        .def("content_hash", &CombinatorialComplex::content_hash)
        .def("__repr__", [](const CombinatorialComplex& cc) {
            return "CombinatorialComplex(cells=" + std::to_string(cc.num_cells()) +
                   ", dim=" + std::to_string(cc.dim()) + ")";
        });

    py::class_<NeighborhoodFunction>(m, "NeighborhoodFunction")
        .def_static("parse", &NeighborhoodFunction::parse, py::arg("text"))
        .def_static("incidence", &NeighborhoodFunction::incidence, py::arg("source"),
                    py::arg("target"))
        .def_static("adjacency", &NeighborhoodFunction::adjacency, py::arg("target"),
                    py::arg("via"))
        .def_property_readonly("target_rank",
                               [](const NeighborhoodFunction& nf) { return nf.target_rank; })
        .def("name", &NeighborhoodFunction::name)
        .def("__eq__", [](const NeighborhoodFunction& a,
                          const NeighborhoodFunction& b) { return a == b; })
        .def("__repr__", [](const NeighborhoodFunction& nf) { return nf.name(); });

    py::class_<HasseGraph>(m, "HasseGraph")
        .def_readonly("nodes", &HasseGraph::nodes)
        .def_readonly("node_ranks", &HasseGraph::node_ranks)
        .def_property_readonly("arcs",
                               [](const HasseGraph& h) {
                                   std::vector<std::pair<CellId, CellId>> out;
                                   for (auto [tail, head] : h.arcs)
                                       out.emplace_back(h.nodes[static_cast<size_t>(tail)],
                                                        h.nodes[static_cast<size_t>(head)]);
                                   return out;
                               })
        .def_property_readonly("target_cells",
                               [](const HasseGraph& h) {
                                   std::vector<CellId> out;
                                   for (int idx : h.target_nodes)
                                       out.push_back(h.nodes[static_cast<size_t>(idx)]);
                                   return out;
                               })
        .def("__len__", &HasseGraph::size)
        .def("__repr__", [](const HasseGraph& h) {
            return "HasseGraph(" + h.origin.name() + ", nodes=" +
                   std::to_string(h.nodes.size()) + ", arcs=" + std::to_string(h.arcs.size()) +
                   ")";
        });

    py::class_<EncodingMatrix>(m, "EncodingMatrix")
        .def_readonly("row_cells", &EncodingMatrix::row_cells)
        .def_readonly("values", &EncodingMatrix::values)
        .def_property_readonly("kind",
                               [](const EncodingMatrix& e) { return e.kind.name(); })
        .def_property_readonly("neighborhood",
                               [](const EncodingMatrix& e) { return e.origin.name(); });

    py::class_<RankFeatureBundle>(m, "RankFeatureBundle")
        .def_readonly("max_rank", &RankFeatureBundle::max_rank)
        .def_readonly("taxonomy", &RankFeatureBundle::taxonomy)
        .def_readonly("complex_hash", &RankFeatureBundle::complex_hash)
        .def("row_cells",
             [](const RankFeatureBundle& b, int r) { return b.row_cells.at(static_cast<size_t>(r)); })
        .def("channel",
             [](const RankFeatureBundle& b, int r, int k) {
                 return b.channels.at(static_cast<size_t>(r)).at(static_cast<size_t>(k));
             },
             py::arg("rank"), py::arg("channel"))
        .def("init_features",
             [](const RankFeatureBundle& b, int r) {
                 return b.init_features.at(static_cast<size_t>(r));
             })
        .def("channel_names",
             [](const RankFeatureBundle& b) {
                 std::vector<std::string> out;
                 for (const auto& k : b.kinds) out.push_back(k.name());
                 return out;
             })
        .def("__eq__", [](const RankFeatureBundle& a,
                          const RankFeatureBundle& b) { return a == b; });

    m.def("build_complex", &build_from_specs, py::arg("cells"),
          "Build a validated complex from (vertices, rank) pairs.");
    m.def("load_complex", &load_complex, py::arg("path"));
    m.def("save_complex", &save_complex, py::arg("path"), py::arg("complex"));
    m.def("is_isomorphic", &is_isomorphic_bruteforce, py::arg("a"), py::arg("b"),
          py::arg("max_vertices") = 8);

    m.def("load_graph", &load_graph, py::arg("path"));
    m.def("save_graph", &save_graph, py::arg("path"), py::arg("graph"));
    m.def("clique_lift", &clique_lift, py::arg("graph"), py::arg("max_rank") = 2);
    m.def("cycle_lift", &cycle_lift, py::arg("graph"), py::arg("max_cycle_len") = 6);
    m.def("chordless_cycles", &chordless_cycles, py::arg("graph"),
          py::arg("max_cycle_len") = 6);

    m.def("taxonomy_set", &taxonomy_set, py::arg("name"));
    m.def("taxonomy_names", &taxonomy_names);
    m.def("rank_targeted", &rank_targeted, py::arg("nfs"), py::arg("rank"));
    m.def("hasse_graph", &hasse_graph, py::arg("complex"), py::arg("nf"),
          py::arg("include_self") = false);

    m.def(
        "encode",
        [](const HasseGraph& h, const std::string& kind) {
            return encode(h, PseKind::parse(kind));
        },
        py::arg("hasse"), py::arg("kind"));
    m.def(
        "encode_graph",
        [](const InputGraph& g, const std::string& kind) {
            return encode(graph_encoding_view(g), PseKind::parse(kind));
        },
        py::arg("graph"), py::arg("kind"),
        "Encode a plain graph (all vertices are target nodes).");

    m.def(
        "precompute_bundle",
        [](const CombinatorialComplex& cc, const py::object& nbhd, const py::object& pse,
           std::optional<int> max_rank) {
            auto nfs = resolve_nfs(nbhd);
            std::string name = py::isinstance<py::str>(nbhd) ? nbhd.cast<std::string>()
                                                             : std::string("custom");
            return precompute_bundle(cc, nfs, resolve_kinds(pse), InitPolicy::ones(),
                                     max_rank, name);
        },
        py::arg("complex"), py::arg("neighborhoods") = "Inc-1",
        py::arg("pse") = "rwse:K=8", py::arg("max_rank") = std::nullopt);
    m.def("load_bundle", &load_bundle, py::arg("path"));
    m.def("save_bundle", &save_bundle, py::arg("path"), py::arg("bundle"));

    m.def("count_neighborhoods", &count_neighborhoods, py::arg("max_rank"));
    m.def("count_minimal_routes", &count_minimal_routes, py::arg("max_rank"));
    m.def("count_extended_routes", &count_extended_routes, py::arg("max_rank"));
    m.def(
        "enumerate_minimal_routes",
        [](int max_rank) {
            std::vector<std::vector<std::string>> out;
            for (const auto& route : enumerate_minimal_routes(max_rank)) {
                std::vector<std::string> names;
                for (const auto& step : route.steps) names.push_back(step.name());
                out.push_back(std::move(names));
            }
            return out;
        },
        py::arg("max_rank"));

    m.def("fused_triangle_ring", &fused_triangle_ring, py::arg("k"));
    m.def(
        "train_demo",
        [](int samples, int steps, std::uint64_t seed, double lr, int hidden, int depth) {
            auto dataset = synth_two_cell_dataset(samples, seed);
            TrainConfig cfg;
            cfg.steps = steps;
            cfg.learning_rate = lr;
            cfg.seed = seed;
            cfg.hidden = hidden;
            cfg.depth = depth;
            auto res = train(dataset, TaskKind::classification(2), cfg);
            return py::make_tuple(accuracy(res.model, dataset), res.loss_trace);
        },
        py::arg("samples") = 128, py::arg("steps") = 200, py::arg("seed") = 7,
        py::arg("lr") = 1e-2, py::arg("hidden") = 16, py::arg("depth") = 1,
        "Train on the synthetic two-cell task; returns (accuracy, loss_trace).");
}
