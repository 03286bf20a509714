#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "synccensus/canonical.hpp"
#include "synccensus/census.hpp"
#include "synccensus/enumerator.hpp"
#include "synccensus/families.hpp"
#include "synccensus/io.hpp"
#include "synccensus/solver.hpp"

namespace py = pybind11;
using namespace synccensus;

namespace {

// Counts may exceed 64 bits; Python ints do not care.
py::int_ to_py(Count c) { return py::int_(py::str(to_string(c))); }

py::dict to_py(const Distribution& d) {
  py::dict out;
  for (const auto& [len, c] : d) out[py::int_(len)] = to_py(c);
  return out;
}

Distribution from_py(const std::map<int, py::int_>& d) {
  Distribution out;
  for (const auto& [len, c] : d) out[len] = parse_count(std::string(py::repr(c)));
  return out;
}

py::object optional_int(const std::optional<int>& v) {
  return v ? py::object(py::int_(*v)) : py::object(py::none());
}

py::dict member_to_py(const Member& m) {
  py::dict out;
  out["length"] = m.length;
  out["strongly_connected"] = m.strongly_connected;
  out["table"] = m.table;
  out["witness"] = m.witness ? py::object(py::str(word_to_string(*m.witness)))
                             : py::object(py::none());
  return out;
}

py::dict histogram_to_py(const Histogram& h) {
  py::dict out;
  out["n"] = h.n;
  out["filter"] = to_string(h.filter);
  out["labeled"] = h.labeled;
  out["total"] = to_py(h.total);
  out["synchronizing"] = to_py(h.synchronizing);
  out["strongly_connected"] = to_py(h.strongly_connected);
  out["sc_sync"] = to_py(h.sc_sync);
  out["irreducible"] = to_py(h.irreducible);
  out["below_threshold"] = to_py(h.below_threshold);
  out["counts"] = to_py(h.counts);
  out["sc_counts"] = to_py(h.sc_counts);
  py::list members;
  for (const auto& m : h.members) members.append(member_to_py(m));
  out["members"] = members;
  out["max_length"] = optional_int(h.max_length());
  return out;
}

py::dict reset_to_py(const ResetResult& r) {
  py::dict out;
  out["synchronizing"] = r.synchronizing();
  out["length"] = optional_int(r.length);
  out["witness"] = r.witness ? py::object(py::str(word_to_string(*r.witness)))
                             : py::object(py::none());
  return out;
}

ShardSpec shard_of(const std::vector<int>& prefix) {
  ShardSpec s;
  for (int v : prefix) {
    if (v < 0 || v >= kMaxStates) throw std::invalid_argument("prefix entry out of range");
    s.prefix.push_back(static_cast<State>(v));
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Census of synchronizing two-letter automata";

  py::class_<TransitionTable>(m, "TransitionTable")
      .def(py::init(&TransitionTable::from_rows),
           py::arg("delta"), "Build from delta[q][a], 0-based.")
      .def_property_readonly("n", &TransitionTable::states)
      .def_property_readonly("k", &TransitionTable::letters)
      .def_property_readonly("delta",
                             [](const TransitionTable& t) {
                               std::vector<std::vector<int>> rows(t.states());
                               for (int q = 0; q < t.states(); ++q) {
                                 for (int a = 0; a < t.letters(); ++a) {
                                   rows[q].push_back(t.target(static_cast<State>(q),
                                                              static_cast<Letter>(a)));
                                 }
                               }
                               return rows;
                             })
      .def("target",
           [](const TransitionTable& t, int q, int a) {
             if (q < 0 || q >= t.states() || a < 0 || a >= t.letters()) {
               throw py::index_error("state or letter out of range");
             }
             return static_cast<int>(t.target(static_cast<State>(q), static_cast<Letter>(a)));
           })
      .def("to_json", [](const TransitionTable& t) { return table_to_json(t).dump(); })
      .def_static("from_json", &parse_table)
      .def(py::self == py::self)
      .def("__hash__",
           [](const TransitionTable& t) { return py::hash(py::str(table_to_json(t).dump())); })
      .def("__repr__", [](const TransitionTable& t) {
        return "TransitionTable(" + table_to_json(t).at("delta").dump() + ")";
      });

  m.def("is_strongly_connected", &is_strongly_connected);
  m.def("is_synchronizing", &is_synchronizing);
  m.def("is_irreducible", &is_irreducible);
  m.def(
      "shortest_reset",
      [](const TransitionTable& t, bool witness) {
        return reset_to_py(shortest_reset_length(t, witness));
      },
      py::arg("table"), py::arg("witness") = true);
  m.def("canonical_form", &canonical_form);
  m.def("automorphism_order", &automorphism_order);

  m.def(
      "count_classes",
      [](int n, const std::string& filter, const std::vector<int>& prefix) {
        const auto f = parse_filter(filter);
        const auto shard = shard_of(prefix);
        py::gil_scoped_release release;
        return enumerate(n, f, shard, Visitor{});
      },
      py::arg("n"), py::arg("filter") = "all", py::arg("prefix") = std::vector<int>{});
  m.def(
      "enumerate",
      [](int n, const std::string& filter, const std::vector<int>& prefix) {
        std::vector<TransitionTable> out;
        enumerate(n, parse_filter(filter), shard_of(prefix),
                  [&](const TransitionTable& t) { out.push_back(t); });
        return out;
      },
      py::arg("n"), py::arg("filter") = "all", py::arg("prefix") = std::vector<int>{},
      "All canonical representatives as a list; meant for small n.");
  m.def(
      "shard_space",
      [](int n, int depth, const std::string& filter) {
        std::vector<std::vector<int>> out;
        for (const auto& s : shard_space(n, depth, parse_filter(filter))) {
          out.emplace_back(s.prefix.begin(), s.prefix.end());
        }
        return out;
      },
      py::arg("n"), py::arg("depth"), py::arg("filter") = "all");

  m.def(
      "build_family",
      [](const std::string& name, int n, int s) {
        return build_family({parse_family(name), n, s});
      },
      py::arg("name"), py::arg("n"), py::arg("s") = 1);
  m.def(
      "expected_length",
      [](const std::string& name, int n, int s) {
        return optional_int(expected_length({parse_family(name), n, s}));
      },
      py::arg("name"), py::arg("n"), py::arg("s") = 1);
  m.def(
      "verify_family",
      [](const std::string& name, int n, int s) {
        const auto r = verify_family({parse_family(name), n, s});
        py::dict out;
        out["table"] = r.table;
        out["expected"] = optional_int(r.expected);
        out["measured"] = reset_to_py(r.measured);
        out["match"] = r.match;
        return out;
      },
      py::arg("name"), py::arg("n"), py::arg("s") = 1);

  m.def(
      "census",
      [](int n, const std::string& filter, int workers, std::optional<int> min_record_length,
         bool witness, bool labeled, const std::vector<int>& prefix) {
        CensusJob job;
        job.n = n;
        job.filter = parse_filter(filter);
        job.shard = shard_of(prefix);
        job.workers = workers;
        job.options.min_record_length = min_record_length;
        job.options.witness = witness;
        job.options.labeled = labeled;
        Histogram h;
        {
          py::gil_scoped_release release;
          h = run_census_job(job).histogram;
        }
        return histogram_to_py(h);
      },
      py::arg("n"), py::arg("filter") = "all", py::arg("workers") = 1,
      py::arg("min_record_length") = py::none(), py::arg("witness") = false,
      py::arg("labeled") = false, py::arg("prefix") = std::vector<int>{});
  m.def(
      "verify_cerny",
      [](int n, const std::string& filter, int workers) {
        const auto f = parse_filter(filter);
        CernyReport r;
        {
          py::gil_scoped_release release;
          r = verify_cerny(n, f, workers);
        }
        py::dict out;
        out["n"] = r.n;
        out["bound"] = r.bound;
        out["max_length"] = optional_int(r.max_length);
        out["argmax"] = r.argmax ? py::object(py::cast(r.argmax->table)) : py::object(py::none());
        out["violations"] = to_py(r.violations);
        out["visited"] = to_py(r.visited);
        out["passed"] = r.passed();
        return out;
      },
      py::arg("n"), py::arg("filter") = "all", py::arg("workers") = 1);

  m.def(
      "find_gaps",
      [](const std::map<int, py::int_>& dist, std::optional<int> floor) {
        const auto d = from_py(dist);
        const auto r = floor ? find_gaps(d, *floor) : find_gaps(d);
        std::vector<std::pair<int, int>> gaps;
        for (const auto& g : r.gaps) gaps.emplace_back(g.lo, g.hi);
        py::dict out;
        out["max_length"] = optional_int(r.max_length);
        out["floor"] = r.floor;
        out["gaps"] = gaps;
        return out;
      },
      py::arg("dist"), py::arg("floor") = py::none());
  m.def(
      "island",
      [](const std::map<int, py::int_>& dist, int n) {
        const auto r = island_members(from_py(dist), {}, n);
        py::dict out;
        out["range"] = std::make_pair(r.lo, r.hi);
        out["counts"] = to_py(r.counts);
        return out;
      },
      py::arg("dist"), py::arg("n"));
}
