#include "anosov/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "anosov/birkhoff.hpp"
#include "anosov/conjugacy.hpp"
#include "anosov/errors.hpp"
#include "anosov/parallel.hpp"

namespace anosov {

using nlohmann::ordered_json;

namespace {

constexpr const char* kFingerprintCaveat =
    "necessary condition only: equal H_1 does not show that the surgered flow is the suspension of A or A^-1";
constexpr const char* kCandidateStatus = "necessary conditions only; membership in Q(gamma,m) not certified";
constexpr const char* kZeroSlopeNote = "not a genuine Birkhoff boundary (zero slope; the section is a closed fiber)";
constexpr const char* kRatioNote =
    "upper-bound sequence C1 sqrt(t) log(t) / |P_t| from the density argument; not a count of loops";
constexpr std::size_t kListingLimit = 200000;

ordered_json header(const char* command, const Hyperbolic2& a, ordered_json bounds) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["matrix"] = json_matrix(a.matrix());
  j["framing"] = kFramingConvention;
  j["bounds"] = std::move(bounds);
  return j;
}

std::string rational_string(const BigRational& q) { return q.get_str(); }

ordered_json json_rational(const BigRational& q) {
  if (q.get_den() == 1) return json_integer(q.get_num());
  return rational_string(q);
}

ordered_json json_vector(const std::vector<BigInt>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back(json_integer(x));
  return arr;
}

std::string move_label(const std::string& id, const BigInt& m) { return "(" + id + ", " + m.get_str() + ")"; }

void require_period_bound(std::size_t p) {
  if (p < 1) throw InputError("max period must be >= 1");
}

ordered_json birkhoff_block(const std::vector<PeriodicOrbit>& orbits, const std::vector<std::string>& ids,
                            const BirkhoffData& data, const ValidationReport& r) {
  ordered_json j;
  j["label"] = data.label;
  j["genus"] = data.genus;
  ordered_json entries = ordered_json::array();
  for (const auto& e : data.entries) {
    const auto it = std::find(orbits.begin(), orbits.end(), e.orbit);
    entries.push_back({{"orbit", ids[static_cast<std::size_t>(it - orbits.begin())]},
                       {"components", e.components},
                       {"multiplicity", json_integer(e.multiplicity)}});
  }
  j["entries"] = std::move(entries);
  j["euler_characteristic"] = json_integer(data.euler_characteristic());
  j["fiber_sum"] = json_integer(r.fiber_sum);
  j["horizontal_sum"] = json_vector(r.horizontal_sum);
  j["fiber_relation"] = r.fiber_relation;
  j["horizontal_relation"] = r.horizontal_relation;
  j["euler"] = r.euler;
  j["multiplicities_nonzero"] = r.multiplicities_nonzero;
  j["passed"] = r.passed();
  return j;
}

std::string tsv_value(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "tsv") return Format::Tsv;
  if (text == "dot") return Format::Dot;
  throw InputError("unknown format '" + text + "' (expected json, tsv or dot)");
}

ordered_json json_integer(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

ordered_json json_matrix(const IntMat& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json_integer(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<std::string, BigInt> parse_move(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto sep = s.find_first_of(",:");
  if (sep == std::string::npos || sep == 0 || sep + 1 == s.size()) {
    throw InputError("malformed move '" + text + "' (expected (pK-iJ,m))");
  }
  const std::string id = s.substr(0, sep);
  const std::string slope = s.substr(sep + 1);
  parse_orbit_id(id);
  const std::size_t digits_from = slope[0] == '-' || slope[0] == '+' ? 1 : 0;
  if (digits_from == slope.size() ||
      !std::all_of(slope.begin() + static_cast<std::ptrdiff_t>(digits_from), slope.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw InputError("malformed slope in move '" + text + "'");
  }
  return {id, BigInt(slope[0] == '+' ? slope.substr(1) : slope)};
}

ordered_json orbits_report(const RunConfig& config) {
  const Hyperbolic2 a = Hyperbolic2::parse(config.matrix);
  require_period_bound(config.max_period);
  const OrbitCensus c = census(a, config.max_period);
  ordered_json j = header("orbits", a, {{"max_period", config.max_period}});
  ordered_json rows = ordered_json::array();
  BigInt points = 0;
  for (std::size_t n = 1; n <= config.max_period; ++n) {
    rows.push_back({{"n", n},
                    {"fixed_points", json_integer(c.fixed_counts[n - 1])},
                    {"least_period_points", json_integer(c.least_counts[n - 1])},
                    {"orbits", json_integer(c.orbit_counts[n - 1])},
                    {"orbits_up_to", json_integer(c.cumulative[n - 1])}});
    points += c.least_counts[n - 1];
  }
  j["census"] = std::move(rows);
  j["total_orbits"] = json_integer(c.total());
  const bool listed = points <= static_cast<unsigned long>(kListingLimit);
  j["representatives_listed"] = listed;
  ordered_json reps = ordered_json::array();
  if (listed) {
    const auto orbits = enumerate_orbits(a, config.max_period, config.threads);
    std::size_t index = 0, period = 0;
    for (const auto& o : orbits) {
      if (o.period() != period) {
        period = o.period();
        index = 0;
      }
      reps.push_back({{"id", orbit_id(period, index++)}, {"period", period}, {"representative", o.representative().to_string()}});
    }
  }
  j["orbits"] = std::move(reps);
  return j;
}

ordered_json reversible_report(const RunConfig& config) {
  const Hyperbolic2 a = Hyperbolic2::parse(config.matrix);
  a.require_positive("reversible");
  if (config.brute_height < 1) throw InputError("brute height must be >= 1");
  ordered_json j = header("reversible", a, {{"brute_height", config.brute_height}});
  j["word"] = rl_decompose(a).to_string();
  j["inverse_word"] = rl_decompose(a.inverse()).to_string();
  const auto w = is_reversible(a);
  j["reversible"] = w.has_value();
  j["status"] = w ? "reversible" : "no witness (word classes differ)";
  if (w) {
    j["witness"] = {{"matrix", json_matrix(w->P)},
                    {"determinant", json_integer(determinant(w->P))},
                    {"verified", verify_witness(a.matrix(), a.inverse().matrix(), *w)}};
  } else {
    j["witness"] = nullptr;
  }
  j["sl_conjugate_to_inverse"] = sl2_conjugate(a, a.inverse()).has_value();
  const auto brute = brute_force_conjugator(a.matrix(), a.inverse().matrix(), config.brute_height, Group::GL);
  j["brute_force"] = brute ? ordered_json{{"found", true}, {"matrix", json_matrix(brute->P)}}
                           : ordered_json{{"found", false}, {"matrix", nullptr}};
  return j;
}

ordered_json surgery_report(const RunConfig& config) {
  const Hyperbolic2 a = Hyperbolic2::parse(config.matrix);
  const SuspensionFlow flow = build_suspension(a);
  if (config.moves.empty()) throw InputError("surgery: at least one --move is required");
  std::vector<std::pair<std::string, BigInt>> parsed;
  std::size_t horizon = 1;
  for (const auto& m : config.moves) {
    parsed.push_back(parse_move(m));
    horizon = std::max(horizon, parse_orbit_id(parsed.back().first).period);
  }
  const auto orbits = enumerate_orbits(a, horizon, config.threads);
  std::vector<SurgeryMove> moves;
  std::vector<std::string> ids;
  for (const auto& [id, slope] : parsed) {
    moves.push_back(SurgeryMove{find_orbit(orbits, id), slope});
    ids.push_back(id);
  }
  const SurgeryPath path = make_surgery_path(flow, moves);
  std::vector<PeriodicOrbit> locus;
  std::vector<BigInt> slopes;
  for (const auto& m : path.moves) {
    locus.push_back(m.orbit);
    slopes.push_back(m.slope);
  }
  const ComplementPresentation pres = h1_complement(flow, locus, config.seed);
  const AbelianGroup result = h1_surgered(pres, slopes);

  ordered_json j = header("surgery", a, {{"orbit_periods_enumerated", horizon}, {"seed", config.seed}});
  ordered_json mv = ordered_json::array();
  for (std::size_t i = 0; i < moves.size(); ++i) {
    mv.push_back({{"orbit", ids[i]},
                  {"period", moves[i].orbit.period()},
                  {"representative", moves[i].orbit.representative().to_string()},
                  {"slope", json_integer(moves[i].slope)}});
  }
  j["moves"] = std::move(mv);
  j["base_h1"] = flow.h1().to_string();
  j["complement_h1"] = pres.group.to_string();
  j["h1"] = result.to_string();
  j["fingerprint_match"] = suspension_fingerprint_check(result, flow);
  j["fingerprint_note"] = kFingerprintCaveat;
  ordered_json presentation;
  presentation["generators"] = pres.generators;
  ordered_json mer = ordered_json::array(), lon = ordered_json::array();
  for (std::size_t i = 0; i < pres.orbits.size(); ++i) {
    mer.push_back(json_vector(pres.meridians[i]));
    lon.push_back(json_vector(pres.longitudes[i]));
  }
  presentation["meridians"] = std::move(mer);
  presentation["longitudes"] = std::move(lon);
  j["presentation"] = std::move(presentation);

  const BirkhoffData section = section_after_surgery(path);
  ordered_json sec;
  sec["genus"] = section.genus;
  ordered_json entries = ordered_json::array(), flagged = ordered_json::array();
  for (const auto& e : section.entries) {
    entries.push_back({{"core_of", ids[*e.core_of_move]},
                       {"components", e.components},
                       {"multiplicity", json_integer(e.multiplicity)}});
  }
  for (const auto& e : section.flagged) flagged.push_back({{"orbit", ids[*e.core_of_move]}, {"note", kZeroSlopeNote}});
  sec["entries"] = std::move(entries);
  sec["flagged"] = std::move(flagged);
  j["section_after_surgery"] = std::move(sec);

  const bool theorem_shape = moves.size() == 2 && moves[0].slope != 0 && moves[1].slope == -moves[0].slope;
  if (theorem_shape) {
    const BirkhoffData data = theorem_a_prime_data(moves[0].orbit, moves[1].orbit, moves[0].slope, config.m0);
    j["birkhoff"] = birkhoff_block(locus, ids, data, validate(data, flow));
  } else {
    j["birkhoff"] = nullptr;
  }
  return j;
}

ordered_json loop_candidates_report(const RunConfig& config) {
  const Hyperbolic2 a = Hyperbolic2::parse(config.matrix);
  const SuspensionFlow flow = build_suspension(a);
  require_period_bound(config.max_period);
  if (config.max_slope < 0) throw InputError("max slope must be >= 0");
  const unsigned threads = std::max(1u, config.threads);

  ordered_json j = header("loop-candidates", a,
                          {{"max_period", config.max_period},
                           {"max_slope", config.max_slope},
                           {"m0", json_integer(config.m0)},
                           {"seed", config.seed}});
  const bool reversible = is_reversible(a).has_value();
  j["reversible"] = reversible;
  j["warning"] = reversible ? ordered_json(nullptr)
                            : ordered_json("A is not reversible: a loop may return to a flow conjugate to A or to A^-1, "
                                           "and the H_1 fingerprint cannot tell which");
  j["status"] = kCandidateStatus;

  const auto orbits = enumerate_orbits(a, config.max_period, threads);
  std::vector<std::string> ids;
  for (const auto& o : orbits) ids.push_back(orbit_id_of(orbits, o));
  const std::string base = flow.h1().to_string();

  std::size_t examined = 0, passed_birkhoff = 0, passed_both = 0;
  ordered_json candidates = ordered_json::array();
  std::set<std::string> fingerprints;
  std::set<std::tuple<std::string, std::string, std::string>> edges;

  if (config.max_slope > 0 && orbits.size() >= 2) {
    const auto sweep = sweep_theorem_a_prime(flow, orbits, config.max_slope, config.m0, threads);
    const std::size_t n = orbits.size();
    std::vector<ComplementPresentation> singles(n);
    parallel_for(n, threads, [&](std::size_t i) { singles[i] = h1_complement(flow, {orbits[i]}, config.seed); });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) pairs.emplace_back(i, k);
    std::vector<ComplementPresentation> doubles(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t p) {
      doubles[p] = h1_complement(flow, {orbits[pairs[p].first], orbits[pairs[p].second]}, config.seed);
    });
    auto pair_index = [&](std::size_t i, std::size_t k) {
      // Row-major index of (i, k), i < k, in the upper triangle.
      return i * n - i * (i + 1) / 2 + (k - i - 1);
    };

    struct Outcome {
      std::string mid, result;
      bool fingerprint = false;
    };
    std::vector<Outcome> outcomes(sweep.size());
    parallel_for(sweep.size(), threads, [&](std::size_t t) {
      const TripleReport& tr = sweep[t];
      if (!tr.report.passed()) return;
      const BigInt m = tr.m;
      const BigInt single_slope[1] = {m};
      outcomes[t].mid = h1_surgered(singles[tr.gamma], single_slope).to_string();
      const std::size_t lo = std::min(tr.gamma, tr.alpha), hi = std::max(tr.gamma, tr.alpha);
      const BigInt slopes[2] = {tr.gamma == lo ? m : BigInt(-m), tr.gamma == lo ? BigInt(-m) : m};
      const AbelianGroup result = h1_surgered(doubles[pair_index(lo, hi)], slopes);
      outcomes[t].result = result.to_string();
      outcomes[t].fingerprint = suspension_fingerprint_check(result, flow);
    });

    for (std::size_t t = 0; t < sweep.size(); ++t) {
      const TripleReport& tr = sweep[t];
      ++examined;
      if (!tr.report.passed()) continue;
      ++passed_birkhoff;
      if (!outcomes[t].fingerprint) continue;
      ++passed_both;
      const Outcome& o = outcomes[t];
      candidates.push_back({{"gamma", ids[tr.gamma]},
                            {"alpha", ids[tr.alpha]},
                            {"m", tr.m},
                            {"h1_after_first", o.mid},
                            {"h1_result", o.result},
                            {"birkhoff_passed", tr.report.passed()},
                            {"fingerprint_match", o.fingerprint},
                            {"label", tr.certified ? "certified" : "hypothetical"}});
      fingerprints.insert(o.mid);
      fingerprints.insert(o.result);
      edges.emplace(base, o.mid, move_label(ids[tr.gamma], BigInt(tr.m)));
      edges.emplace(o.mid, o.result, move_label(ids[tr.alpha], BigInt(-tr.m)));
    }
  }
  j["orbit_count"] = orbits.size();
  j["triples_examined"] = examined;
  j["passed_birkhoff"] = passed_birkhoff;
  j["passed_both"] = passed_both;
  j["candidates"] = std::move(candidates);

  std::vector<std::string> nodes{base};
  for (const auto& f : fingerprints)
    if (f != base) nodes.push_back(f);
  std::map<std::string, std::string> node_id;
  ordered_json graph_nodes = ordered_json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    node_id[nodes[i]] = "n" + std::to_string(i);
    graph_nodes.push_back({{"id", node_id[nodes[i]]}, {"h1", nodes[i]}, {"base", i == 0}});
  }
  ordered_json graph_edges = ordered_json::array();
  for (const auto& [from, to, label] : edges) {
    graph_edges.push_back({{"from", node_id[from]}, {"to", node_id[to]}, {"label", label}});
  }
  j["graph"] = {{"nodes", std::move(graph_nodes)}, {"edges", std::move(graph_edges)}};
  return j;
}

ordered_json propb_report(const RunConfig& config) {
  const Hyperbolic2 a = Hyperbolic2::parse(config.matrix);
  a.require_positive("propb");
  config.propb.validate();
  require_period_bound(config.max_period);
  const OrbitCensus c = census(a, config.max_period);
  ordered_json j = header("propb", a,
                          {{"max_period", config.max_period},
                           {"c0", json_rational(config.propb.c0)},
                           {"t0", config.propb.t0},
                           {"kappa3", json_rational(config.propb.kappa3)}});
  j["note"] = kRatioNote;
  const auto ratios = density_ratio(c, config.propb);
  ordered_json rows = ordered_json::array();
  for (const auto& r : ratios) {
    rows.push_back({{"t", r.t},
                    {"orbits_up_to", json_integer(c.orbits_up_to(r.t))},
                    {"pairs", json_integer(pair_count(c, r.t))},
                    {"fh_bound_upper", fh_bound(config.propb, r.t).hi.get_d()},
                    {"ratio_upper", r.ratio.hi.get_d()},
                    {"ratio_upper_exact", rational_string(r.ratio.hi)}});
  }
  j["ratios"] = std::move(rows);
  // Certified strict decrease: the whole enclosure at t+1 lies below the enclosure at t.
  bool decreasing = true;
  std::size_t checked = 0;
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
    if (ratios[i].t < 5) continue;
    ++checked;
    if (!(ratios[i + 1].ratio.hi < ratios[i].ratio.lo)) decreasing = false;
  }
  j["decreasing_from_t5"] = checked > 0 ? ordered_json(decreasing) : ordered_json(nullptr);
  if (config.max_period >= 5) {
    const GrowthReport g = growth_rate(c);
    j["growth"] = {{"horizon", g.horizon},
                   {"orbits_up_to", json_integer(g.orbits)},
                   {"estimate_lower", g.estimate.lo.get_d()},
                   {"estimate_upper", g.estimate.hi.get_d()},
                   {"log_lambda_lower", g.target.lo.get_d()},
                   {"log_lambda_upper", g.target.hi.get_d()},
                   {"relative_error_lower", g.relative_error.lo.get_d()},
                   {"relative_error_upper", g.relative_error.hi.get_d()}};
  } else {
    j["growth"] = nullptr;
  }
  return j;
}

std::string orbits_tsv(const ordered_json& report) {
  std::ostringstream out;
  out << "n\tfixed_points\tleast_period_points\torbits\torbits_up_to\n";
  for (const auto& r : report["census"]) {
    out << r["n"].dump() << '\t' << tsv_value(r["fixed_points"]) << '\t' << tsv_value(r["least_period_points"]) << '\t'
        << tsv_value(r["orbits"]) << '\t' << tsv_value(r["orbits_up_to"]) << '\n';
  }
  if (report["representatives_listed"].get<bool>()) {
    out << "\nid\tperiod\trepresentative\n";
    for (const auto& o : report["orbits"]) {
      out << tsv_value(o["id"]) << '\t' << o["period"].dump() << '\t' << tsv_value(o["representative"]) << '\n';
    }
  }
  return out.str();
}

std::string reversible_tsv(const ordered_json& report) {
  std::ostringstream out;
  out << "key\tvalue\n";
  out << "word\t" << tsv_value(report["word"]) << '\n';
  out << "inverse_word\t" << tsv_value(report["inverse_word"]) << '\n';
  out << "status\t" << tsv_value(report["status"]) << '\n';
  out << "witness\t" << (report["witness"].is_null() ? "none" : report["witness"]["matrix"].dump()) << '\n';
  out << "sl_conjugate_to_inverse\t" << report["sl_conjugate_to_inverse"].dump() << '\n';
  out << "brute_force\t" << (report["brute_force"]["found"].get<bool>() ? report["brute_force"]["matrix"].dump() : "none")
      << '\n';
  return out.str();
}

std::string surgery_tsv(const ordered_json& report) {
  std::ostringstream out;
  out << "key\tvalue\n";
  for (const auto& m : report["moves"]) out << "move\t" << tsv_value(m["orbit"]) << "," << tsv_value(m["slope"]) << '\n';
  out << "base_h1\t" << tsv_value(report["base_h1"]) << '\n';
  out << "complement_h1\t" << tsv_value(report["complement_h1"]) << '\n';
  out << "h1\t" << tsv_value(report["h1"]) << '\n';
  out << "fingerprint_match\t" << report["fingerprint_match"].dump() << '\n';
  out << "birkhoff_passed\t" << (report["birkhoff"].is_null() ? "n/a" : report["birkhoff"]["passed"].dump()) << '\n';
  out << "framing\t" << tsv_value(report["framing"]) << '\n';
  return out.str();
}

std::string loop_candidates_tsv(const ordered_json& report) {
  std::ostringstream out;
  out << "gamma\talpha\tm\th1_after_first\th1_result\tlabel\n";
  for (const auto& c : report["candidates"]) {
    out << tsv_value(c["gamma"]) << '\t' << tsv_value(c["alpha"]) << '\t' << c["m"].dump() << '\t'
        << tsv_value(c["h1_after_first"]) << '\t' << tsv_value(c["h1_result"]) << '\t' << tsv_value(c["label"]) << '\n';
  }
  return out.str();
}

std::string propb_tsv(const ordered_json& report) {
  std::ostringstream out;
  out << "t\torbits_up_to\tpairs\tfh_bound_upper\tratio_upper\n";
  for (const auto& r : report["ratios"]) {
    out << r["t"].dump() << '\t' << tsv_value(r["orbits_up_to"]) << '\t' << tsv_value(r["pairs"]) << '\t'
        << r["fh_bound_upper"].dump() << '\t' << r["ratio_upper"].dump() << '\n';
  }
  return out.str();
}

std::string loop_candidates_dot(const ordered_json& report) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q.push_back('\\');
      q.push_back(ch);
    }
    return q + "\"";
  };
  std::ostringstream out;
  out << "digraph surgery_neighborhood {\n";
  for (const auto& n : report["graph"]["nodes"]) {
    out << "  " << n["id"].get<std::string>() << " [label=" << quote(n["h1"].get<std::string>()) << "];\n";
  }
  for (const auto& e : report["graph"]["edges"]) {
    out << "  " << e["from"].get<std::string>() << " -> " << e["to"].get<std::string>()
        << " [label=" << quote(e["label"].get<std::string>()) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace anosov
