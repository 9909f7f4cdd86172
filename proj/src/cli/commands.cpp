#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "json_io.hpp"
#include "monotor/cli.hpp"
#include "monotor/errors.hpp"

namespace monotor::cli {

namespace {

constexpr unsigned kDefaultBox = 8;
constexpr std::size_t kMaxWindow = 100000;

struct Job {
  Node root;
  const RunOptions& options;
  json unverified = json::array();
};

using Handler = std::function<json(Job&)>;

std::optional<GradedRing> optional_ring(const Node& root) {
  if (!root.has("ring")) return std::nullopt;
  return read_ring(root.at("ring"));
}

std::optional<std::size_t> ring_vars(const std::optional<GradedRing>& r) {
  if (!r) return std::nullopt;
  return r->num_vars();
}

GradedRing required_ring(const Node& root) { return read_ring(root.at("ring")); }

RestrictedRing restricted_ring(const Node& root, const GradedRing& ring) {
  if (!root.has("subgroup")) return RestrictedRing::unrestricted(ring);
  return RestrictedRing(ring, read_subgroup(root.at("subgroup"), ring.group()));
}

std::vector<Exponent> read_exponents(const Node& n, std::optional<std::size_t> vars) {
  if (!n.value.is_array()) n.fail("expected an array");
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < n.value.size(); ++i) out.push_back(read_exponent(n.at(i), vars));
  return out;
}

unsigned box_of(const Job& job) {
  if (job.options.box) return *job.options.box;
  if (!job.root.has("box")) return kDefaultBox;
  const unsigned long b = read_natural(job.root.at("box"));
  if (b > 1000) job.root.at("box").fail("box too large");
  return static_cast<unsigned>(b);
}

// Window degrees in lexicographic order, reduced in the group, without repeats.
std::vector<IntVector> window_of(const Job& job, const FgAbelianGroup& group) {
  const std::size_t rank = group.ambient_rank();
  IntVector from, to;
  if (job.options.window) {
    from.assign(rank, Integer(job.options.window->first));
    to.assign(rank, Integer(job.options.window->second));
  } else {
    const Node w = job.root.at("window");
    w.expect_object({"from", "to"}, {});
    from = read_degree(w.at("from"), rank);
    to = read_degree(w.at("to"), rank);
  }
  Integer count = 1;
  for (std::size_t k = 0; k < rank; ++k) {
    if (to[k] < from[k]) throw SchemaError("window: empty range in coordinate " + std::to_string(k));
    count *= to[k] - from[k] + 1;
  }
  if (count > kMaxWindow) throw DomainError("window has too many degrees");
  std::vector<IntVector> out;
  std::set<IntVector> seen;
  IntVector g = from;
  while (true) {
    IntVector r = group.reduce(g);
    if (seen.insert(r).second) out.push_back(std::move(r));
    std::size_t k = rank;
    while (k > 0) {
      --k;
      if (g[k] < to[k]) {
        ++g[k];
        break;
      }
      g[k] = from[k];
      if (k == 0) return out;
    }
    if (rank == 0) return out;
  }
}

GradedModule module_of(const Node& root, const RestrictedRing& s) {
  MonomialIdeal quotient = MonomialIdeal::zero(s.num_vars());
  std::optional<IntVector> shift;
  if (root.has("module")) {
    const Node m = root.at("module");
    m.expect_object({}, {"quotient", "shift"});
    if (m.has("quotient")) quotient = MonomialIdeal::minimalize(read_exponents(m.at("quotient"), s.num_vars()), s.num_vars());
    if (m.has("shift")) shift = read_degree(m.at("shift"), s.base().group().ambient_rank());
  }
  if (root.has("subgroup")) return GradedModule(s, quotient, shift);
  return GradedModule(s.base(), quotient, shift);
}

Coefficients coefficients_of(const Node& root, Coefficients fallback) {
  if (!root.has("base_ring")) return fallback;
  return coefficients_for(read_base_ring(root.at("base_ring")));
}

Subgroup b_of(const Node& root, const Fan& fan, const CoxData& cox) {
  if (!root.has("B")) return Subgroup::full(cox.group);
  const Node b = root.at("B");
  if (b.value.is_string()) {
    const std::string s = b.value.get<std::string>();
    if (s == "A") return Subgroup::full(cox.group);
    if (s == "pic") return pic_subgroup(fan, cox);
    b.fail("expected \"A\", \"pic\" or an object with generators");
  }
  return read_subgroup(b, cox.group);
}

json encode_index(const SubgroupIndex& i) { return i ? encode(*i) : json("infinite"); }

json encode_vectors(const std::vector<IntVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(encode(v));
  return out;
}

json encode_exponents(const std::vector<Exponent>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(encode(e));
  return out;
}

json encode_columns(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(encode(m.column(c)));
  return out;
}

json encode_certificate(const FloorIdentityCertificate& c) {
  return {{"restricted", encode(c.restricted)},
          {"floor_H", encode(c.floor_h)},
          {"floor_restricted", encode(c.floor_restricted)},
          {"p", c.p},
          {"q", c.q},
          {"bound", c.bound}};
}

bool any_inexact(const std::vector<DegreeCohomology>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const DegreeCohomology& d) { return !d.exact; });
}

// ---- commands -------------------------------------------------------------

json cmd_floor(Job& job) {
  job.root.expect_object({"ideal"}, {"ring"});
  const auto ring = optional_ring(job.root);
  return {{"floor", encode(floor(read_ideal(job.root.at("ideal"), ring_vars(ring))))}};
}

json cmd_restrict(Job& job) {
  job.root.expect_object({"ring", "ideal"}, {"subgroup"});
  const GradedRing ring = required_ring(job.root);
  const RestrictedRing s = restricted_ring(job.root, ring);
  const MonomialIdeal a = read_ideal(job.root.at("ideal"), ring.num_vars());
  return {{"restricted", encode(restrict_ideal(s, a))},
          {"floor_H", encode(floor_H(s, a))},
          {"floor_restricted", encode(floor_restricted(s, a))},
          {"index", encode_index(s.subgroup().index())}};
}

json cmd_m_mu(Job& job) {
  job.root.expect_object({"ring", "ideal", "mu"}, {"subgroup"});
  const GradedRing ring = required_ring(job.root);
  const RestrictedRing s = restricted_ring(job.root, ring);
  const MonomialIdeal a = read_ideal(job.root.at("ideal"), ring.num_vars());
  const Exponent mu = read_exponent(job.root.at("mu"), ring.num_vars());
  return {{"mu", encode(mu)}, {"m_mu", m_mu(s, a, mu)}};
}

std::pair<MonomialIdeal, MonomialIdeal> read_pair(const Node& root) {
  const auto ring = optional_ring(root);
  MonomialIdeal a = read_ideal(root.at("a"), ring_vars(ring));
  MonomialIdeal b = read_ideal(root.at("b"), a.num_vars());
  return {std::move(a), std::move(b)};
}

json cmd_gamma_eq(Job& job) {
  job.root.expect_object({"a", "b"}, {"ring"});
  const auto [a, b] = read_pair(job.root);
  const bool eq = gamma_eq_finite_type(a, b);
  json out = {{"equal", eq}, {"floor_a", encode(floor(a))}, {"floor_b", encode(floor(b))}};
  if (eq) out["floor"] = encode(floor(a));
  return out;
}

json cmd_gamma_compare(Job& job) {
  job.root.expect_object({"a", "b"}, {"ring"});
  const auto [a, b] = read_pair(job.root);
  const TorsionComparison c = gamma_compare(a, b);
  return {{"relation", to_string(c.relation)},
          {"a_power_in_b", encode_optional(c.a_power_in_b)},
          {"b_power_in_a", encode_optional(c.b_power_in_a)}};
}

json cmd_gamma_restricted(Job& job) {
  job.root.expect_object({"ring", "a", "b"}, {"subgroup"});
  const GradedRing ring = required_ring(job.root);
  const RestrictedRing s = restricted_ring(job.root, ring);
  const MonomialIdeal a = read_ideal(job.root.at("a"), ring.num_vars());
  const MonomialIdeal b = read_ideal(job.root.at("b"), ring.num_vars());
  const MonomialIdeal fa = floor_H(s, a), fb = floor_H(s, b);
  return {{"equal", gamma_eq_restricted(s, a, b)},
          {"restricted_a", encode(restrict_ideal(s, a))},
          {"restricted_b", encode(restrict_ideal(s, b))},
          {"floor_H_a", encode(fa)},
          {"floor_H_b", encode(fb)},
          {"floor_H_equal", fa == fb},
          {"floor_a", encode(floor(a))},
          {"floor_b", encode(floor(b))}};
}

json cmd_nil_index(Job& job) {
  job.root.expect_object({"base_ring"}, {});
  const BaseRingDescriptor base = read_base_ring(job.root.at("base_ring"));
  const NilIndex n = nil_index(base);
  return {{"variant", variant_name(base)},
          {"nil_index", n ? json(*n) : json("infinite")},
          {"gamma_floor_eq_radical", gamma_floor_eq_radical(base)}};
}

json cmd_radical_power(Job& job) {
  job.root.expect_object({"base_ring", "ideal"}, {"ring"});
  const BaseRingDescriptor base = read_base_ring(job.root.at("base_ring"));
  const auto ring = optional_ring(job.root);
  const MonomialIdeal a = read_ideal(job.root.at("ideal"), ring_vars(ring));
  const auto in_ideal = radical_power_in_ideal(base, a);
  const auto in_floor = radical_power_in_floor(base, a);
  return {{"in_ideal", in_ideal ? json(*in_ideal) : json(nullptr)},
          {"in_floor", in_floor ? json(*in_floor) : json(nullptr)}};
}

json cmd_witness(Job& job) {
  if (job.root.has("family")) {
    job.root.expect_object({"family", "n"}, {});
    const IdealFamily f = read_family(job.root.at("family"));
    const unsigned long n = read_natural(job.root.at("n"));
    if (n == 0 || n > 1000) job.root.at("n").fail("expected 1 <= n <= 1000");
    const ContainmentWitness w = no_containment_witness(f, static_cast<unsigned>(n));
    return {{"kind", "no-containment"}, {"n", n}, {"level", w.level}, {"monomial", encode(w.monomial)}};
  }
  job.root.expect_object({"base_ring", "n"}, {});
  const BaseRingDescriptor base = read_base_ring(job.root.at("base_ring"));
  const unsigned long n = read_natural(job.root.at("n"));
  if (n > 1000) job.root.at("n").fail("expected n <= 1000");
  const auto w = nil_power_witness(base, n);
  json witness = nullptr;
  if (w) witness = {{"truncation", w->truncation.exponents}, {"monomial", encode(w->monomial)}};
  return {{"kind", "nil-power"}, {"n", n}, {"witness", witness}};
}

json cmd_cech(Job& job) {
  job.root.expect_object({"ring", "sequence", "degree"}, {"subgroup", "module", "base_ring", "box"});
  const GradedRing ring = required_ring(job.root);
  const RestrictedRing s = restricted_ring(job.root, ring);
  const GradedModule m = module_of(job.root, s);
  const auto seq = read_exponents(job.root.at("sequence"), ring.num_vars());
  const IntVector g = read_degree(job.root.at("degree"), ring.group().ambient_rank());
  const DegreeCohomology d =
      cech_cohomology_degree(m, seq, g, box_of(job), coefficients_of(job.root, Coefficients::rationals()));
  job.unverified.push_back("ITI");
  if (!d.exact) job.unverified.push_back("box-stabilization");
  json out = encode(d);
  out["sequence"] = encode_exponents(seq);
  out["box"] = box_of(job);
  return out;
}

json cmd_degsupp(Job& job) {
  job.root.expect_object({"ring", "sequence"}, {"subgroup", "module", "base_ring", "box", "window"});
  const GradedRing ring = required_ring(job.root);
  const RestrictedRing s = restricted_ring(job.root, ring);
  const GradedModule m = module_of(job.root, s);
  const auto seq = read_exponents(job.root.at("sequence"), ring.num_vars());
  const auto window = window_of(job, ring.group());
  const CohomologyReport r =
      degsupp_window(m, seq, window, box_of(job), coefficients_of(job.root, Coefficients::rationals()));
  job.unverified.push_back("ITI");
  if (any_inexact(r.degrees)) job.unverified.push_back("box-stabilization");
  json degrees = json::array();
  for (const auto& d : r.degrees) degrees.push_back(encode(d));
  return {{"degsupp", encode_vectors(r.degsupp)},
          {"flat_eligible", encode_vectors(r.flat_eligible)},
          {"degrees", degrees},
          {"box", box_of(job)}};
}

json encode_cones(const std::vector<Cone>& cones) {
  json out = json::array();
  for (const auto& c : cones) out.push_back(c);
  return out;
}

json fan_json(const Fan& fan) {
  return {{"rank", fan.rank},
          {"rays", encode_vectors(fan.rays)},
          {"cones", encode_cones(fan.cones)},
          {"max_cones", encode_cones(fan.max_cones)},
          {"warnings", fan.warnings}};
}

json cmd_fan_cox(Job& job) {
  job.root.expect_object({"fan"}, {});
  const Fan fan = read_fan(job.root.at("fan"));
  const CoxData cox = cox_grading(fan);
  return {{"fan", fan_json(fan)},
          {"group",
           {{"ambient_rank", cox.group.ambient_rank()},
            {"relations", encode_columns(cox.group.relations())},
            {"invariant_factors", encode(cox.group.invariant_factors())}}},
          {"degrees", encode_columns(cox.deg_map)}};
}

json cmd_fan_pic(Job& job) {
  job.root.expect_object({"fan"}, {});
  const Fan fan = read_fan(job.root.at("fan"));
  const CoxData cox = cox_grading(fan);
  const Subgroup pic = pic_subgroup(fan, cox);
  return {{"generators", encode_columns(pic.generators())},
          {"index", encode_index(pic.index())},
          {"equals_A", pic.index() && *pic.index() == 1},
          {"degrees", encode_columns(cox.deg_map)}};
}

json cmd_irrelevant(Job& job) {
  job.root.expect_object({"fan"}, {"B"});
  const Fan fan = read_fan(job.root.at("fan"));
  const CoxData cox = cox_grading(fan);
  const Subgroup b = b_of(job.root, fan, cox);
  json cones = json::array();
  for (const auto& c : fan.cones)
    cones.push_back({{"cone", c}, {"z_hat", encode(z_hat(fan, c))}, {"m_sigma", m_sigma(fan, cox, b, c)}});
  return {{"irrelevant", encode(irrelevant_ideal(fan))}, {"cones", cones}};
}

json cmd_floor_identity(Job& job) {
  if (!job.root.has("fan")) {
    job.root.expect_object({"ring", "ideal"}, {"subgroup"});
    const GradedRing ring = required_ring(job.root);
    const RestrictedRing s = restricted_ring(job.root, ring);
    const MonomialIdeal a = read_ideal(job.root.at("ideal"), ring.num_vars());
    json out = encode_certificate(gamma_floor_identity(s, a));
    out["gamma_equal"] = true;
    return out;
  }
  job.root.expect_object({"fan"}, {"B"});
  const Fan fan = read_fan(job.root.at("fan"));
  const CoxData cox = cox_grading(fan);
  const Subgroup b = b_of(job.root, fan, cox);
  const ToricFloorIdentity t = floor_identity_toric(fan, cox, b);
  job.unverified.push_back("ITI");
  return {{"generated", encode(t.generated)},
          {"floor_b", encode(t.floor_b)},
          {"ideals_equal", t.ideals_equal},
          {"generated_maximal", encode(t.generated_maximal)},
          {"maximal_equal", t.maximal_equal},
          {"generated_power_in_floor", encode_optional(t.generated_power_in_floor)},
          {"floor_power_in_generated", encode_optional(t.floor_power_in_generated)},
          {"gamma_equal", t.gamma_equal},
          {"certificate", encode_certificate(t.certificate)},
          {"b_index", encode_index(b.index())},
          {"sequence", encode_exponents(cech_sequence(fan, cox, b))}};
}

json cmd_flat_report(Job& job) {
  job.root.expect_object({"fan"},
                         {"B", "module", "base_ring", "box", "window", "localized_flatness", "presentation"});
  const Fan fan = read_fan(job.root.at("fan"));
  const CoxData cox = cox_grading(fan);
  const Subgroup b = b_of(job.root, fan, cox);
  const std::size_t n = fan.rays.size();
  MonomialIdeal quotient = MonomialIdeal::zero(n);
  std::optional<IntVector> shift;
  if (job.root.has("module")) {
    const Node m = job.root.at("module");
    m.expect_object({}, {"quotient", "shift"});
    if (m.has("quotient")) quotient = MonomialIdeal::minimalize(read_exponents(m.at("quotient"), n), n);
    if (m.has("shift")) shift = read_degree(m.at("shift"), cox.group.ambient_rank());
  }
  const bool asserted = job.root.has("localized_flatness") && read_bool(job.root.at("localized_flatness"));
  const auto window = window_of(job, cox.group);
  const FlatDegreeReport r = flat_degree_report(fan, cox, b, quotient, shift, window, box_of(job),
                                                coefficients_of(job.root, Coefficients::integers()), asserted);
  json pieces = json::array();
  for (std::size_t i = 0; i < r.pieces.size(); ++i)
    pieces.push_back({{"degree", encode(r.cohomology.degrees[i].degree)},
                      {"flat", r.pieces[i].flat},
                      {"rank", r.pieces[i].rank},
                      {"truncated", r.pieces[i].truncated}});
  json degrees = json::array();
  for (const auto& d : r.cohomology.degrees) degrees.push_back(encode(d));
  json out = {{"sequence", encode_exponents(r.sequence)},
              {"degsupp", encode_vectors(r.cohomology.degsupp)},
              {"flat_eligible", encode_vectors(r.cohomology.flat_eligible)},
              {"outside_b", encode_vectors(r.outside_b)},
              {"degrees", degrees},
              {"pieces", pieces},
              {"box", box_of(job)},
              {"hypotheses",
               {{"b_subset_pic", r.b_subset_pic ? "yes" : "no"},
                {"localized_flatness", asserted ? "asserted-by-user" : "not-asserted"}}}};
  if (job.root.has("presentation"))
    out["presentation_flat"] = presentation_is_flat(read_matrix_rows(job.root.at("presentation")));
  job.unverified.push_back("ITI");
  job.unverified.push_back("sheaf-flatness");
  if (any_inexact(r.cohomology.degrees)) job.unverified.push_back("box-stabilization");
  return out;
}

// Random monomial ideal: 1..max_gens generators, entries in [0, max_exp].
// Plain modular reduction keeps the stream identical across standard libraries.
MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t n, unsigned max_exp, unsigned max_gens) {
  const std::size_t k = 1 + rng() % max_gens;
  std::vector<Exponent> gens;
  for (std::size_t i = 0; i < k; ++i) {
    Exponent e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = static_cast<Exponent::value_type>(rng() % (max_exp + 1));
    gens.push_back(e);
  }
  return MonomialIdeal::minimalize(std::move(gens), n);
}

json cmd_oracle_agree(Job& job) {
  job.root.expect_object({}, {"trials", "variables", "max_exponent", "max_gens"});
  auto get = [&](const char* key, unsigned long fallback, unsigned long lo, unsigned long hi) {
    if (!job.root.has(key)) return fallback;
    const unsigned long v = read_natural(job.root.at(key));
    if (v < lo || v > hi)
      job.root.at(key).fail("expected " + std::to_string(lo) + " <= value <= " + std::to_string(hi));
    return v;
  };
  const unsigned long trials = get("trials", 1000, 1, 1000000);
  const unsigned long n = get("variables", 5, 1, 8);
  const unsigned long e = get("max_exponent", 4, 1, 16);
  const unsigned long g = get("max_gens", 4, 1, 16);
  std::mt19937_64 rng(job.options.seed);
  unsigned long agree = 0, equal = 0;
  json first = nullptr;
  for (unsigned long t = 0; t < trials; ++t) {
    const MonomialIdeal a = random_ideal(rng, n, e, g);
    const MonomialIdeal b = random_ideal(rng, n, e, g);
    const bool fast = gamma_eq_finite_type(a, b);
    const bool slow = gamma_compare(a, b).relation == Relation::equal;
    if (fast == slow)
      ++agree;
    else if (first.is_null())
      first = {{"trial", t}, {"a", encode(a)}, {"b", encode(b)}};
    if (fast) ++equal;
  }
  return {{"trials", trials},
          {"agreements", agree},
          {"disagreements", trials - agree},
          {"equal_pairs", equal},
          {"seed", job.options.seed},
          {"first_disagreement", first}};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"floor", cmd_floor},
      {"restrict", cmd_restrict},
      {"m-mu", cmd_m_mu},
      {"gamma-eq", cmd_gamma_eq},
      {"gamma-compare", cmd_gamma_compare},
      {"gamma-restricted", cmd_gamma_restricted},
      {"nil-index", cmd_nil_index},
      {"radical-power", cmd_radical_power},
      {"witness", cmd_witness},
      {"cech", cmd_cech},
      {"degsupp", cmd_degsupp},
      {"fan-cox", cmd_fan_cox},
      {"fan-pic", cmd_fan_pic},
      {"irrelevant", cmd_irrelevant},
      {"floor-identity", cmd_floor_identity},
      {"flat-report", cmd_flat_report},
      {"oracle-agree", cmd_oracle_agree},
  };
  return table;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
}

// Objects and arrays of objects are indented; arrays without objects (exponent
// lists, ideals, degrees) stay on one line.
bool has_object(const json& v) {
  if (v.is_object()) return true;
  if (!v.is_array()) return false;
  return std::any_of(v.begin(), v.end(), [](const json& x) { return has_object(x); });
}

void render(const json& v, std::string& out, std::size_t indent) {
  if (!has_object(v)) {
    out += v.dump(-1, ' ', false, json::error_handler_t::strict);
    return;
  }
  const std::string pad(indent + 2, ' ');
  const bool obj = v.is_object();
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) out += json(it.key()).dump() + ": ";
    render(*it, out, indent + 2);
  }
  out += "\n" + std::string(indent, ' ') + (obj ? "}" : "]");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

std::string run(const std::string& command, const std::string& input, const RunOptions& options) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw SchemaError("unknown command '" + command + "'");
  const json doc = parse_document(input);
  Job job{Node{doc, "$"}, options};
  json report = it->second(job);
  report["command"] = command;
  report["version"] = kSchemaVersion;
  report["unverified_hypotheses"] = job.unverified;
  std::string out;
  render(report, out, 0);
  return out + "\n";
}

}  // namespace monotor::cli
