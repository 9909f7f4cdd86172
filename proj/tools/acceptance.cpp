// Acceptance runner: one PASS/FAIL line per criterion.
//
// usage: monotor_acceptance <path to monotor executable> [scratch dir]
//
// Exit status is 0 when every criterion passes or fails only as listed in
// kKnownDeviations; any other failure gives 1.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../tests/oracles.hpp"
#include "monotor/cech.hpp"
#include "monotor/errors.hpp"
#include "monotor/toric.hpp"
#include "monotor/torsion.hpp"

using namespace monotor;
namespace br = monotor::base_ring;
namespace fs = std::filesystem;

namespace {

// pinned limits
constexpr double kSuite1Seconds = 10.0;
constexpr double kSuite7Seconds = 30.0;
constexpr int kSuite1Pairs = 1000;
constexpr int kSuite2Cases = 200;
constexpr int kSuite6Cases = 60;
constexpr std::uint64_t kSeed = 20240601;

// Criteria that are expected to fail; see the README section on deviations.
const std::set<std::string> kKnownDeviations = {"9a"};

int failures = 0;
int unexpected = 0;

void report(const std::string& id, bool ok, const std::string& text) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << text;
  if (!ok) {
    ++failures;
    if (kKnownDeviations.count(id))
      std::cout << "  [known deviation]";
    else
      ++unexpected;
  }
  std::cout << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

MonomialIdeal ideal(std::vector<Exponent> gens, std::size_t n) { return MonomialIdeal::minimalize(std::move(gens), n); }

IntVector v(std::initializer_list<long> xs) { return to_int_vector(xs); }

std::vector<IntVector> range(long a, long b) {
  std::vector<IntVector> out;
  for (long g = a; g <= b; ++g) out.push_back(v({g}));
  return out;
}

// Same support, exponents moved around: a pair with equal floors.
MonomialIdeal perturb(std::mt19937_64& rng, const MonomialIdeal& a) {
  std::vector<Exponent> gens;
  for (const auto& g : a.gens()) {
    Exponent e = g;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) e[i] = 1 + rng() % 4;
    gens.push_back(e);
    // an extra multiple never changes the floor
    Exponent m = e;
    m[rng() % m.size()] += 1;
    gens.push_back(m);
  }
  return ideal(std::move(gens), a.num_vars());
}

void criterion1() {
  std::mt19937_64 rng(kSeed);
  const auto t0 = std::chrono::steady_clock::now();
  int agree = 0, equal = 0;
  for (int t = 0; t < kSuite1Pairs; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const MonomialIdeal a = oracle::random_ideal(rng, n, 4, 4);
    const MonomialIdeal b = (t % 2 == 0) ? oracle::random_ideal(rng, n, 4, 4) : perturb(rng, a);
    const bool fast = gamma_eq_finite_type(a, b);
    const bool slow = gamma_compare(a, b).relation == Relation::equal;
    agree += fast == slow;
    equal += fast;
  }
  const double s = seconds_since(t0);
  report("1", agree == kSuite1Pairs && s < kSuite1Seconds,
         "gamma_eq_finite_type vs gamma_compare: " + std::to_string(agree) + "/" + std::to_string(kSuite1Pairs) +
             " agree (" + std::to_string(equal) + " equal pairs), " + fmt_seconds(s) + " (limit 10 s)");
}

// Random grading onto Z or Z^2 and a subgroup of index <= 6.
RestrictedRing random_restricted(std::mt19937_64& rng, std::size_t n) {
  if (rng() % 3 == 0 && n >= 2) {
    // Z^2 with X_0, X_1 the unit vectors
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (i < 2)
        cols.push_back(i == 0 ? v({1, 0}) : v({0, 1}));
      else
        cols.push_back(v({static_cast<long>(rng() % 4) - 1, static_cast<long>(rng() % 4) - 1}));
    }
    GradedRing r(FgAbelianGroup::free(2), IntMatrix::from_columns(cols, 2));
    static const std::vector<std::pair<long, long>> diag = {{1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 2}, {2, 3}, {1, 6}};
    const auto [d1, d2] = diag[rng() % diag.size()];
    IntMatrix h = IntMatrix::from_rows({{d1, static_cast<long>(rng() % 2)}, {0, d2}});
    return RestrictedRing(r, Subgroup(r.group(), h));
  }
  std::vector<long> degrees = {1};
  for (std::size_t i = 1; i < n; ++i) degrees.push_back(static_cast<long>(rng() % 5) - 1);
  GradedRing r = GradedRing::integer_graded(degrees);
  const long d = 1 + static_cast<long>(rng() % 6);
  return RestrictedRing(r, Subgroup(r.group(), IntMatrix::from_rows({{d}})));
}

bool mutual(const MonomialIdeal& a, const MonomialIdeal& b) {
  return power_containment_exists(a, b).has_value() && power_containment_exists(b, a).has_value();
}

void criterion2() {
  std::mt19937_64 rng(kSeed + 2);
  int ok = 0, max_index = 0;
  std::string first_bad;
  for (int t = 0; t < kSuite2Cases; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const RestrictedRing s = random_restricted(rng, n);
    max_index = std::max<int>(max_index, static_cast<int>(s.subgroup().index()->get_si()));
    const MonomialIdeal a = oracle::random_ideal(rng, n, 3, 3);
    try {
      const FloorIdentityCertificate c = gamma_floor_identity(s, a);
      const bool good = c.p <= c.bound && c.q <= c.bound && mutual(c.restricted, c.floor_h) &&
                        mutual(c.restricted, c.floor_restricted) && mutual(c.floor_h, c.floor_restricted);
      ok += good;
      if (!good && first_bad.empty()) first_bad = " first failure at case " + std::to_string(t);
    } catch (const std::exception& e) {
      if (first_bad.empty()) first_bad = std::string(" exception: ") + e.what();
    }
  }
  report("2", ok == kSuite2Cases && max_index <= 6,
         "floor identity certificates: " + std::to_string(ok) + "/" + std::to_string(kSuite2Cases) +
             " within bound with pairwise mutual power containment (max index " + std::to_string(max_index) + ")" +
             first_bad);
}

RestrictedRing even_line() {
  GradedRing r = GradedRing::integer_graded({1});
  return RestrictedRing(r, Subgroup(r.group(), IntMatrix::from_rows({{2}})));
}

void criterion3() {
  const RestrictedRing s = even_line();
  const MonomialIdeal a = ideal({{4}}, 1);
  const MonomialIdeal x4 = ideal({{4}}, 1), x2 = ideal({{2}}, 1);
  const bool ok = restrict_ideal(s, a) == x4 && floor_H(s, a) == x4 && floor_restricted(s, a) == x2 &&
                  ideal_contains(x2, x4) && !(x2 == x4);
  report("3", ok, "strict chain a_(H) = floor_H = <X0^4> < <X0^2> = floor_(H) for a = <X0^4>, H = 2Z");
}

void criterion4() {
  const RestrictedRing s = even_line();
  const MonomialIdeal a = ideal({{4}}, 1), b = ideal({{2}}, 1), x = ideal({{1}}, 1);
  const bool ok = floor(a) == x && floor(b) == x && gamma_eq_restricted(s, a, b) && floor_H(s, a) == a &&
                  floor_H(s, b) == b && !(floor_H(s, a) == floor_H(s, b));
  report("4", ok, "converse failure: floor a = floor b = <X0>, restricted Gamma equal, floor_H <X0^4> != <X0^2>");
}

void criterion5() {
  const std::vector<BaseRingDescriptor> all = {br::ZeroRing{},
                                               br::Field{0},
                                               br::Field{5},
                                               br::Integers{},
                                               br::IntegersMod{12},
                                               br::TruncatedPolynomial{{1, 2, 3}},
                                               br::SquareZeroFamily{true},
                                               br::TruncatedFamilyUnbounded{}};
  bool ok = true;
  for (const auto& b : all) ok = ok && gamma_floor_eq_radical(b) == nil_index(b).has_value();
  const bool z12 = nil_index(br::IntegersMod{12}) == 2UL && oracle::nil_index_mod(12) == 2;
  const bool t123 = nil_index(br::TruncatedPolynomial{{1, 2, 3}}) == 4UL && oracle::nil_index_truncated({1, 2, 3}) == 4;
  int witnesses = 0;
  for (unsigned long n = 1; n <= 10; ++n) {
    const auto w = nil_power_witness(br::TruncatedFamilyUnbounded{}, n);
    if (!w) continue;
    // Y_{n+1}^n in Q[Y_1..Y_{n+1}]/(Y_k^k): nonzero since n < n+1, and it is a
    // product of n copies of the nilpotent Y_{n+1}
    const auto& e = w->truncation.exponents;
    bool good = e.size() == n + 1 && w->monomial.size() == n + 1 && w->monomial[n] == n;
    for (std::size_t k = 0; k < e.size() && good; ++k) {
      good = e[k] == k + 1 && w->monomial[k] < e[k];
      if (k < n) good = good && w->monomial[k] == 0;
    }
    witnesses += good;
  }
  report("5", ok && z12 && t123 && witnesses == 10,
         "nil indices: criterion holds for all 8 descriptors, Z/12 -> 2, Q[Y]/(Y1,Y2^2,Y3^3) -> 4 (brute force), " +
             std::to_string(witnesses) + "/10 witnesses Y_{n+1}^n != 0");
}

void criterion6() {
  std::mt19937_64 rng(kSeed + 6);
  int ok = 0;
  std::string note;
  for (int t = 0; t < kSuite6Cases; ++t) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<long> degrees = {1};
    for (std::size_t i = 1; i < n; ++i) degrees.push_back(1 + static_cast<long>(rng() % 2));
    const GradedRing r = GradedRing::integer_graded(degrees);
    const MonomialIdeal c = oracle::random_ideal(rng, n, 3, 3);
    std::vector<Exponent> seq;
    const std::size_t s = 1 + rng() % 3;
    for (std::size_t j = 0; j < s; ++j) {
      Exponent e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = rng() % 3;
      if (e.is_zero()) e[j % n] = 1;
      seq.push_back(e);
    }
    try {
      ok += h0_equals_torsion(GradedModule(r, c), seq, range(-6, 6), 8);
    } catch (const std::exception& e) {
      if (note.empty()) note = std::string(" (") + e.what() + ")";
    }
  }
  report("6", ok == kSuite6Cases,
         "H^0 = torsion of R/c: " + std::to_string(ok) + "/" + std::to_string(kSuite6Cases) +
             " random quotients, window [-6,6]" + note);
}

Fan p1() { return validate_fan(1, {v({1}), v({-1})}, {{0}, {1}}); }
Fan p2() { return validate_fan(2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}); }
Fan p1xp1() {
  return validate_fan(2, {v({1, 0}), v({-1, 0}), v({0, 1}), v({0, -1})}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}
Fan p112() { return validate_fan(2, {v({1, 0}), v({-1, -2}), v({0, 1})}, {{0, 1}, {1, 2}, {0, 2}}); }

Subgroup index_two(const CoxData& cox) {
  IntMatrix g = IntMatrix::identity(cox.group.ambient_rank());
  g(0, 0) = 2;
  return Subgroup(cox.group, g);
}

long binom2(long m) { return m * (m - 1) / 2; }

void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  // P^1: sheaf H^1 sits at Čech position 2 of the module complex
  const Fan f1 = p1();
  const CoxData c1 = cox_grading(f1);
  const auto r1 = flat_degree_report(f1, c1, Subgroup::full(c1.group), MonomialIdeal::zero(2), std::nullopt,
                                     range(-5, 5), 8, Coefficients::rationals(), false);
  bool ok1 = r1.cohomology.degrees.size() == 11;
  for (const auto& d : r1.cohomology.degrees) {
    const long a = d.degree[0].get_si();
    for (long i = 0; i <= 3; ++i) {
      const long want = (i == 2 && a <= -2) ? -a - 1 : 0;
      ok1 = ok1 && d.group(i).rank == static_cast<std::size_t>(want) && d.group(i).torsion.empty();
    }
    ok1 = ok1 && d.exact;
  }
  // P^2: sheaf H^2 at position 3, dimension binom(-a-1, 2)
  const Fan f2 = p2();
  const CoxData c2 = cox_grading(f2);
  const auto r2 = flat_degree_report(f2, c2, Subgroup::full(c2.group), MonomialIdeal::zero(3), std::nullopt,
                                     range(-4, 4), 7, Coefficients::rationals(), false);
  bool ok2 = r2.cohomology.degsupp == std::vector<IntVector>{v({-4}), v({-3})};
  for (const auto& d : r2.cohomology.degrees) {
    const long a = d.degree[0].get_si();
    const long want = a <= -3 ? binom2(-a - 1) : 0;
    ok2 = ok2 && d.group(3).rank == static_cast<std::size_t>(want) && d.exact;
    if (a == -3) ok2 = ok2 && d.group(3).rank == 1;
  }
  const double s = seconds_since(t0);
  report("7", ok1 && ok2 && s < kSuite7Seconds,
         "closed forms: P^1 H^1 = -a-1 on [-5,-2], 0 elsewhere in [-5,5]; P^2 H^2_{-3} = 1, degsupp {-4,-3}; " +
             fmt_seconds(s) + " (limit 30 s)");
}

void criterion8() {
  const CoxData c2 = cox_grading(p2());
  const CoxData cw = cox_grading(p112());
  const CoxData c1 = cox_grading(p1());
  const bool ok = c2.group.invariant_factors() == IntVector{0} && c2.deg_map == IntMatrix::from_rows({{1, 1, 1}}) &&
                  cw.group.invariant_factors() == IntVector{0} && cw.deg_map == IntMatrix::from_rows({{1, 1, 2}}) &&
                  pic_subgroup(p112(), cw).index() == Integer(2) && pic_subgroup(p1(), c1).index() == Integer(1) &&
                  pic_subgroup(p2(), c2).index() == Integer(1);
  report("8", ok, "Cox/Pic: P^2 (Z; 1,1,1), P(1,1,2) (Z; 1,1,2) with Pic index 2, Pic = A for P^1 and P^2");
}

void criterion9() {
  struct Case {
    std::string name;
    Fan fan;
  };
  const std::vector<Case> fans = {{"P1", p1()}, {"P2", p2()}, {"P1xP1", p1xp1()}, {"P(1,1,2)", p112()}};
  int total = 0, literal = 0, gamma = 0, maximal = 0;
  std::string misses;
  for (const auto& [name, fan] : fans) {
    const CoxData cox = cox_grading(fan);
    const std::vector<std::pair<std::string, Subgroup>> bs = {
        {"A", Subgroup::full(cox.group)}, {"Pic", pic_subgroup(fan, cox)}, {"index 2", index_two(cox)}};
    for (const auto& [bname, b] : bs) {
      const ToricFloorIdentity t = floor_identity_toric(fan, cox, b);
      ++total;
      literal += t.ideals_equal;
      if (!t.ideals_equal) misses += (misses.empty() ? "" : ", ") + name + "/" + bname;
      gamma += t.gamma_equal && t.certificate.p <= t.certificate.bound && t.certificate.q <= t.certificate.bound;
      maximal += t.maximal_equal;
    }
  }
  const std::string of = "/" + std::to_string(total);
  report("9a", literal == total,
         "<Z_s^m_s : s in all cones> = floor_B(I) as ideals: " + std::to_string(literal) + of +
             (misses.empty() ? "" : " (differs for " + misses + ")"));
  report("9b", gamma == total, "Gamma-equality of both sides with certificates: " + std::to_string(gamma) + of);
  report("9c", maximal == total,
         "<Z_s^m_s : s maximal> = floor_B(I) as ideals: " + std::to_string(maximal) + of);

  const Fan f = p1();
  const CoxData c = cox_grading(f);
  const auto r = flat_degree_report(f, c, Subgroup::full(c.group), MonomialIdeal::zero(2), std::nullopt, range(-5, 5),
                                    8, Coefficients::integers(), false);
  report("9d", r.cohomology.flat_eligible == range(-1, 5) && r.b_subset_pic,
         "flat report P^1, B = A, window [-5,5]: flat-eligible {-1..5}");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& exe, const std::string& args, const fs::path& out) {
  const std::string cmd = "\"" + exe + "\" " + args + " --out \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion10(const std::string& exe, const fs::path& dir) {
  fs::create_directories(dir);
  const std::string line = R"({"grading":{"ambient_rank":1,"degrees":[[1]]}})";
  const std::string p1fan = R"({"rank":1,"rays":[[1],[-1]],"cones":[[0],[1]]})";
  const std::string p2fan = R"({"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[0,2]]})";
  const std::string wfan = R"({"rank":2,"rays":[[1,0],[-1,-2],[0,1]],"cones":[[0,1],[1,2],[0,2]]})";
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"oracle-agree", R"({"trials":1000})"},
      {"floor-identity", R"({"ring":)" + line + R"(,"subgroup":{"generators":[[3]]},"ideal":{"gens":[[5]]}})"},
      {"restrict", R"({"ring":)" + line + R"(,"subgroup":{"generators":[[2]]},"ideal":{"gens":[[4]]}})"},
      {"gamma-restricted",
       R"({"ring":)" + line + R"(,"subgroup":{"generators":[[2]]},"a":{"gens":[[4]]},"b":{"gens":[[2]]}})"},
      {"nil-index", R"({"base_ring":{"variant":"IntegersMod","params":{"modulus":12}}})"},
      {"witness", R"({"base_ring":{"variant":"TruncatedFamilyUnbounded"},"n":10})"},
      {"degsupp",
       R"({"ring":{"grading":{"ambient_rank":1,"degrees":[[1],[1]]}},"module":{"quotient":[[2,1]]},"sequence":[[1,0],[0,1]],"window":{"from":-6,"to":6}})"},
      {"flat-report", R"({"fan":)" + p1fan + R"(,"window":{"from":-5,"to":5}})"},
      {"flat-report", R"({"fan":)" + p2fan + R"(,"window":{"from":-4,"to":4},"box":7})"},
      {"fan-cox", R"({"fan":)" + wfan + "}"},
      {"fan-pic", R"({"fan":)" + wfan + "}"},
      {"floor-identity", R"({"fan":)" + wfan + R"(,"B":"pic"})"},
  };
  int same = 0;
  std::string bad;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const fs::path in = dir / ("job" + std::to_string(i) + ".json");
    std::ofstream(in) << jobs[i].second;
    const fs::path o1 = dir / ("job" + std::to_string(i) + ".a.out");
    const fs::path o2 = dir / ("job" + std::to_string(i) + ".b.out");
    const std::string args = jobs[i].first + " --in \"" + in.string() + "\"";
    const bool ok = run_cli(exe, args, o1) == 0 && run_cli(exe, args, o2) == 0 && !read_file(o1).empty() &&
                    read_file(o1) == read_file(o2);
    same += ok;
    if (!ok) bad += " " + jobs[i].first;
  }
  report("10", same == static_cast<int>(jobs.size()),
         "determinism: " + std::to_string(same) + "/" + std::to_string(jobs.size()) +
             " CLI jobs byte-identical across two runs" + bad);
}

template <class F>
void guarded(const std::string& id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: monotor_acceptance <monotor executable> [scratch dir]\n";
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "monotor_acceptance";

  guarded("1", criterion1);
  guarded("2", criterion2);
  guarded("3", criterion3);
  guarded("4", criterion4);
  guarded("5", criterion5);
  guarded("6", criterion6);
  guarded("7", criterion7);
  guarded("8", criterion8);
  guarded("9", criterion9);
  guarded("10", [&] { criterion10(exe, scratch); });

  std::cout << "summary: " << failures << " failing, " << unexpected << " unexpected\n";
  return unexpected == 0 ? 0 : 1;
}
