#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anosov/birkhoff.hpp"
#include "anosov/census_stats.hpp"
#include "anosov/conjugacy.hpp"
#include "anosov/errors.hpp"
#include "anosov/report.hpp"
#include "anosov/surgery.hpp"

namespace py = pybind11;
using namespace anosov;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_py(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::list to_py(const IntMat& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

// Accepts "a,b;c,d" or [[a, b], [c, d]].
Hyperbolic2 to_matrix(const py::object& m) {
  if (py::isinstance<py::str>(m)) return Hyperbolic2::parse(m.cast<std::string>());
  const auto rows = m.cast<std::vector<std::vector<py::int_>>>();
  if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) throw InputError("not hyperbolic: matrix is not 2x2");
  std::vector<BigInt> entries;
  for (const auto& row : rows)
    for (const auto& e : row) entries.emplace_back(py::str(e).cast<std::string>());
  return Hyperbolic2::from_matrix(IntMat(2, 2, std::move(entries)));
}

py::object witness(const std::optional<ConjugacyWitness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["P"] = to_py(w->P);
  d["group"] = group_name(w->group);
  return d;
}

py::list orbits(const py::object& m, std::size_t max_period) {
  const Hyperbolic2 a = to_matrix(m);
  const auto all = enumerate_orbits(a, max_period);
  py::list out;
  for (const auto& o : all) {
    py::dict d;
    d["id"] = orbit_id_of(all, o);
    d["period"] = o.period();
    py::list pts;
    for (const auto& p : o.points) pts.append(p.to_string());
    d["points"] = pts;
    out.append(d);
  }
  return out;
}

py::dict census_dict(const py::object& m, std::size_t t) {
  const OrbitCensus c = census(to_matrix(m), t);
  py::dict d;
  d["fixed_counts"] = to_py(c.fixed_counts);
  d["least_counts"] = to_py(c.least_counts);
  d["orbit_counts"] = to_py(c.orbit_counts);
  d["cumulative"] = to_py(c.cumulative);
  return d;
}

std::string surgery_h1(const py::object& m, const std::vector<std::pair<std::string, long long>>& moves, std::uint64_t seed) {
  const Hyperbolic2 a = to_matrix(m);
  const SuspensionFlow flow = build_suspension(a);
  std::size_t needed = 1;
  for (const auto& mv : moves) needed = std::max(needed, parse_orbit_id(mv.first).period);
  const auto all = enumerate_orbits(a, needed);
  std::vector<SurgeryMove> path;
  for (const auto& [id, slope] : moves) path.push_back({find_orbit(all, id), BigInt(std::to_string(slope))});
  return h1_surgered(make_surgery_path(flow, std::move(path)), seed).to_string();
}

py::dict theorem_data(const py::object& m, const std::string& gamma, const std::string& alpha, long long slope) {
  const Hyperbolic2 a = to_matrix(m);
  const SuspensionFlow flow = build_suspension(a);
  const auto all = enumerate_orbits(a, std::max(parse_orbit_id(gamma).period, parse_orbit_id(alpha).period));
  const BirkhoffData data = theorem_a_prime_data(find_orbit(all, gamma), find_orbit(all, alpha), BigInt(std::to_string(slope)));
  const ValidationReport r = validate(data, flow);
  py::list entries;
  for (const auto& e : data.entries) {
    py::dict d;
    d["orbit"] = orbit_id_of(all, e.orbit);
    d["components"] = e.components;
    d["multiplicity"] = to_py(e.multiplicity);
    entries.append(d);
  }
  py::dict d;
  d["entries"] = entries;
  d["euler_characteristic"] = to_py(data.euler_characteristic());
  d["fiber_sum"] = to_py(r.fiber_sum);
  d["horizontal_sum"] = to_py(r.horizontal_sum);
  d["fiber_relation"] = r.fiber_relation;
  d["horizontal_relation"] = r.horizontal_relation;
  d["euler"] = r.euler;
  d["passed"] = r.passed();
  return d;
}

BigRational parse_q(const std::string& s) {
  BigRational q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

py::tuple fh(std::size_t t, const std::string& c0, std::size_t t0, const std::string& kappa3) {
  PropBParams p;
  p.c0 = parse_q(c0);
  p.t0 = t0;
  p.kappa3 = parse_q(kappa3);
  const Interval b = fh_bound(p, t);
  return py::make_tuple(b.lo.get_d(), b.hi.get_d());
}

std::string run_report(const std::string& command, const py::object& m, std::size_t max_period, long max_slope,
                       long brute_height, long long m0, const std::vector<std::string>& moves, std::uint64_t seed,
                       unsigned threads) {
  RunConfig cfg;
  cfg.matrix = py::isinstance<py::str>(m) ? m.cast<std::string>() : to_matrix(m).to_string();
  cfg.max_period = max_period;
  cfg.max_slope = max_slope;
  cfg.brute_height = brute_height;
  cfg.m0 = BigInt(std::to_string(m0));
  cfg.moves = moves;
  cfg.seed = seed;
  cfg.threads = threads;
  nlohmann::ordered_json j;
  if (command == "orbits") j = orbits_report(cfg);
  else if (command == "reversible") j = reversible_report(cfg);
  else if (command == "surgery") j = surgery_report(cfg);
  else if (command == "loop-candidates") j = loop_candidates_report(cfg);
  else if (command == "propb") j = propb_report(cfg);
  else throw InputError("unknown command '" + command + "'");
  return j.dump(2);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact periodic-orbit, conjugacy and surgery-homology computations for hyperbolic toral automorphisms.";
  py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);

  mod.attr("__version__") = kToolVersion;
  mod.def("fixed_point_count", [](const py::object& m, unsigned long n) { return to_py(fixed_point_count(to_matrix(m), n)); },
          py::arg("matrix"), py::arg("n"));
  mod.def("orbits", &orbits, py::arg("matrix"), py::arg("max_period"));
  mod.def("census", &census_dict, py::arg("matrix"), py::arg("max_period"));
  mod.def("rl_word", [](const py::object& m) { return rl_decompose(to_matrix(m)).to_string(); }, py::arg("matrix"));
  mod.def("sl2_conjugate", [](const py::object& a, const py::object& b) { return witness(sl2_conjugate(to_matrix(a), to_matrix(b))); },
          py::arg("a"), py::arg("b"));
  mod.def("gl2_conjugate", [](const py::object& a, const py::object& b) { return witness(gl2_conjugate(to_matrix(a), to_matrix(b))); },
          py::arg("a"), py::arg("b"));
  mod.def("is_reversible", [](const py::object& m) { return witness(is_reversible(to_matrix(m))); }, py::arg("matrix"));
  mod.def("suspension_h1", [](const py::object& m) { return build_suspension(to_matrix(m)).h1().to_string(); }, py::arg("matrix"));
  mod.def("surgery_h1", &surgery_h1, py::arg("matrix"), py::arg("moves"), py::arg("seed") = 0);
  mod.def("theorem_a_prime", &theorem_data, py::arg("matrix"), py::arg("gamma"), py::arg("alpha"), py::arg("m"));
  mod.def("fh_bound", &fh, py::arg("t"), py::arg("c0") = "1", py::arg("t0") = 1, py::arg("kappa3") = "1");
  mod.def("report", &run_report, py::arg("command"), py::arg("matrix"), py::arg("max_period") = 3, py::arg("max_slope") = 3,
          py::arg("brute_height") = 2, py::arg("m0") = 0, py::arg("moves") = std::vector<std::string>{}, py::arg("seed") = 0,
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
}
