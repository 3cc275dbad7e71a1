// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "brim/cli.hpp"
#include "brim/jointred.hpp"
#include "brim/koszul.hpp"
#include "helpers.hpp"

using namespace brim;
using namespace brim::testing;

namespace {

struct Failed {
  std::string what;
};

bool saw_no_stabilization = false;

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed{what};
}

std::string str(long long v) { return std::to_string(v); }

GradedSubmodule<Q> M(const PolyRing& r, const std::vector<std::string>& gs) { return module(r, 1, gs); }

std::vector<Polynomial<Q>> polys(const PolyRing& r, const std::vector<std::string>& xs) {
  std::vector<Polynomial<Q>> v;
  for (const auto& x : xs) v.push_back(P(x, r));
  return v;
}

/// ebr straight from the staircase oracle: Δ^(d+p-1) of the length
/// sequence, required to be constant over its last three entries.
long long oracle_ebr(const PolyRing& r, const std::vector<std::string>& gs) {
  auto mo = monos(r, gs);
  int dim = r.nx + r.nt - 1;
  std::vector<long long> v;
  for (int n = 1; n <= dim + 6; ++n) {
    long long l = staircase_length(r, {mo}, {n}, 0);
    expect(l >= 0, "staircase oracle did not close");
    v.push_back(l);
  }
  for (int k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  auto n = v.size();
  expect(v[n - 1] == v[n - 2] && v[n - 2] == v[n - 3], "oracle differences not constant");
  return v.back();
}

struct Fx {
  PolyRing r11 = ring(1, 1), r12 = ring(1, 2), r21 = ring(2, 1), r22 = ring(2, 2);
  GradedSubmodule<Q> x2 = M(r11, {"x1^2*t1"});
  GradedSubmodule<Q> x2x3 = M(r12, {"x1^2*t1", "x1^3*t2"});
  GradedSubmodule<Q> mf = M(r22, {"x1*t1", "x2*t1", "x1*t2", "x2*t2"});
  GradedSubmodule<Q> m = M(r21, {"x1*t1", "x2*t1"});
  GradedSubmodule<Q> x2y = M(r21, {"x1^2*t1", "x2*t1"});
  GradedSubmodule<Q> m2 = M(r21, {"x1^2*t1", "x1*x2*t1", "x2^2*t1"});
  GradedSubmodule<Q> sq = M(r21, {"x1^2*t1", "x2^2*t1"});
};

std::string c1_ebr() {
  Fx f;
  struct Case {
    PolyRing r;
    std::vector<std::string> gs;
    long long want;
  };
  std::vector<Case> cases{{f.r11, {"x1^2*t1"}, 2}, {f.r12, {"x1^2*t1", "x1^3*t2"}, 5},
                          {f.r22, {"x1*t1", "x2*t1", "x1*t2", "x2*t2"}, 3}};
  std::string out;
  for (const auto& c : cases) {
    long long o = oracle_ebr(c.r, c.gs);
    long long v = ebr(M(c.r, c.gs)).value;
    expect(o == c.want, "oracle gives " + str(o) + ", expected " + str(c.want));
    expect(v == o, "ebr gives " + str(v) + ", oracle " + str(o));
    out += str(v) + " ";
  }
  return "values " + out;
}

std::string c2_rees() {
  Fx f;
  auto& r = f.r21;
  auto& r2 = f.r22;
  std::vector<std::string> m2{"x1^2*t1", "x1*x2*t1", "x2^2*t1"};
  std::vector<std::string> m{"x1*t1", "x2*t1"};
  std::vector<std::string> mF{"x1*t1", "x2*t1", "x1*t2", "x2*t2"};
  struct Pair {
    PolyRing r;
    std::vector<std::string> u, e;
  };
  std::vector<Pair> corpus{
      {r, m, m},
      {r, {"x1^2*t1", "x2^2*t1"}, m2},
      {r, {"x1^3*t1", "x2^3*t1"}, {"x1^3*t1", "x1^2*x2*t1", "x1*x2^2*t1", "x2^3*t1"}},
      {r, {"x1^2*t1", "x2^3*t1"}, m2},
      {r, {"x1^2*t1", "x2^2*t1"}, {"x1^2*t1", "x2*t1"}},
      {r, {"x1^2*t1 + x2^2*t1", "x1*x2*t1"}, m2},
      {r, {"x1^3*t1", "x2^3*t1"}, {"x1^3*t1", "x1^2*x2*t1", "x2^3*t1"}},
      {r, {"x1^3*t1", "x2^3*t1"}, {"x1^3*t1", "x1*x2*t1", "x2^3*t1"}},
      {r, {"x1^4*t1", "x2^2*t1"}, {"x1^4*t1", "x1^2*x2*t1", "x2^2*t1"}},
      {r, {"x1*t1 + 2*x2*t1", "3*x1*t1 - x2*t1"}, m},
      {r, {"x1^2*t1", "x2^2*t1 + x1*x2*t1"}, m2},
      {r, {"x1^3*t1", "x2^2*t1"}, {"x1^3*t1", "x1*x2*t1", "x2^2*t1"}},
      {r, {"x1^3*t1", "x2^2*t1"}, {"x1^3*t1", "x1^2*x2*t1", "x2^2*t1"}},
      {r, {"x1^2*t1", "x2^2*t1"}, {"x1*t1", "x2^2*t1"}},
      {r, {"x1^2*t1 - x2^2*t1", "x1*x2*t1"}, m2},
      // one generic generator
      {r, {"x1^2*t1", "x2^2*t1 + 37*x1*x2*t1"}, m2},
      {r, {"x1^3*t1", "x2^2*t1 + 53*x1^2*x2*t1"}, {"x1^3*t1", "x1^2*x2*t1", "x2^2*t1"}},
      {r2, {"x1*t1", "x2*t2", "x1*t2 + x2*t1"}, mF},
      {r2, {"x1*t1", "x2*t1 + x1*t2", "x2*t2"}, mF},
      {r2, {"x1*t1 + x2*t2", "x2*t1", "x1*t2"}, mF},
      {r2, {"x1*t1", "x2*t2", "17*x1*t2 + 29*x2*t1"}, mF},
      {r2, {"x1^2*t1", "x2^2*t1", "x1^2*t2", "x2^2*t2"},
       {"x1^2*t1", "x1*x2*t1", "x2^2*t1", "x1^2*t2", "x1*x2*t2", "x2^2*t2"}},
      {r2, {"x1^2*t1", "x2^2*t1", "x1^2*t2", "x2^2*t2"}, mF},
      {r2, {"x1*t1", "x2*t1", "x1^2*t2", "x2^2*t2"}, mF},
      {r2, {"x1*t1", "x2*t1", "x1*t2", "x2^2*t2"}, mF},
      {r2, {"x1^2*t1", "x2*t1 + x1*t2", "x2*t2"}, {"x1^2*t1", "x2*t1", "x1*t2", "x2*t2"}},
  };
  int yes = 0, no = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& c = corpus[i];
    auto u = M(c.r, c.u);
    auto e = M(c.r, c.e);
    auto d = is_reduction(u, e, 6);
    long long eu = ebr(u).value, ee = ebr(e).value;
    bool red = d.verdict == Verdict::True;
    expect(red == (eu == ee), "pair " + str(static_cast<long long>(i)) + ": verdict " + to_string(d.verdict) +
                                  " but ebr " + str(eu) + " vs " + str(ee));
    if (red) {
      int n1 = *d.n0 + 1;
      auto lhs = product(u, power(e, n1));
      auto rhs = power(e, n1 + 1);
      expect(submodule_eq(lhs.generators(), rhs.generators()),
             "pair " + str(static_cast<long long>(i)) + ": equality fails at n0+1");
      ++yes;
    } else {
      expect(d.counterexample.has_value(), "pair " + str(static_cast<long long>(i)) + ": no counterexample");
      ++no;
    }
  }
  return str(static_cast<long long>(corpus.size())) + " pairs, " + str(yes) + " reductions, " + str(no) + " not";
}

std::string c3_power() {
  Fx f;
  std::string out;
  for (const auto* e : {&f.x2, &f.x2x3, &f.mf}) {
    long long base = ebr(*e).value;
    int dim = e->ring().nx + e->ring().nt - 1;
    for (int r = 2; r <= 3; ++r) {
      long long want = base;
      for (int k = 0; k < dim; ++k) want *= r;
      long long got = tilde_ebr(power(*e, r)).value;
      expect(got == want, "tilde_ebr(E^" + str(r) + ") = " + str(got) + ", expected " + str(want));
      out += str(got) + " ";
    }
  }
  return "values " + out;
}

std::string c4_mixed() {
  Fx f;
  auto a = mixed<Q>({f.m, f.x2y}, {1, 1});
  expect(a.value == 1, "mixed((m,(x^2,y)),(1,1)) = " + str(a.value));
  auto mo = std::vector<std::vector<Monomial>>{monos(f.r21, {"x1*t1", "x2*t1"}), monos(f.r21, {"x1^2*t1", "x2*t1"})};
  std::vector<std::pair<std::vector<int>, long long>> corner{{{1, 1}, 4}, {{2, 1}, 7}, {{1, 2}, 9}, {{2, 2}, 13}};
  for (const auto& [n, want] : corner) {
    long long o = staircase_length(f.r21, mo, n, 0);
    expect(o == want, "oracle corner value " + str(o) + " vs " + str(want));
    expect(a.table.at(n) == want, "table corner value " + str(a.table.at(n)) + " vs " + str(want));
  }
  // permutation invariance and the k = 1 collapse
  std::vector<std::pair<GradedSubmodule<Q>, GradedSubmodule<Q>>> pairs{
      {f.m, f.x2y}, {f.m, f.m2}, {f.x2y, f.sq}, {f.m2, f.sq}};
  for (const auto& [e1, e2] : pairs) {
    for (std::vector<int> dv : {std::vector<int>{1, 1}, {2, 0}, {0, 2}}) {
      auto ab = mixed<Q>({e1, e2}, dv).value;
      auto ba = mixed<Q>({e2, e1}, {dv[1], dv[0]}).value;
      expect(ab == ba, "permutation changes the value");
    }
  }
  for (const auto* e : {&f.x2, &f.x2x3, &f.mf, &f.m, &f.x2y, &f.m2, &f.sq}) {
    int dim = e->ring().nx + e->ring().nt - 1;
    expect(mixed<Q>({*e}, {dim}).value == ebr(*e).value, "k = 1 collapse fails");
  }
  return "value 1, corners 4 7 9 13";
}

std::string c5_scaling() {
  Fx f;
  std::string out;
  for (const auto& [e1, e2] : std::vector<std::pair<GradedSubmodule<Q>, GradedSubmodule<Q>>>{{f.m, f.x2y}, {f.sq, f.m}}) {
    long long base = mixed<Q>({e1, e2}, {1, 1}).value;
    for (int l = 2; l <= 3; ++l) {
      long long got = mixed<Q>({e1, power(e2, l)}, {1, 1}).value;
      expect(got == l * base, "scaling gives " + str(got) + ", expected " + str(l * base));
      out += str(got) + " ";
    }
  }
  return "values " + out;
}

std::string c6_koszul() {
  Fx f;
  auto g = [&](const std::vector<std::string>& es) {
    auto res = g_mult_et(KoszulSpec<Q>(polys(f.r21, es)));
    expect(res.euler == res.value, "Euler path disagrees with rank path");
    return res.value;
  };
  expect(g({"x1*t1", "x2*t1"}) == 1 && ebr(f.m).value == 1, "e_t(xt, yt) != 1");
  expect(g({"x1^2*t1", "x2*t1"}) == 2, "e_t(x^2 t, yt) != 2");
  auto pw = [](const std::string& v, int l) { return l == 1 ? v : v + "^" + std::to_string(l); };
  for (int l1 = 1; l1 <= 3; ++l1)
    for (int l2 = 1; l2 <= 3; ++l2) {
      long long v = g({pw("x1", l1) + "*t1", pw("x2", l2) + "*t1"});
      expect(v == l1 * l2, "e_t(x^" + str(l1) + " t, y^" + str(l2) + " t) = " + str(v));
    }
  return "1, 2 and l1*l2 for l <= 3";
}

std::string c7_risler() {
  Fx f;
  struct Case {
    std::vector<GradedSubmodule<Q>> es;
    std::vector<int> dvec;
  };
  std::vector<Case> cases{
      {{f.m, f.m}, {1, 1}},   {{f.m, f.m2}, {1, 1}}, {{f.m, f.sq}, {1, 1}},
      {{f.sq, f.m2}, {1, 1}}, {{f.mf}, {3}},         {{f.x2}, {1}},
      {{f.m2}, {2}},
  };
  std::string out;
  for (const auto& c : cases) {
    std::optional<long long> seen;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto rep = risler_teissier_check(c.es, c.dvec, seed);
      expect(rep.lhs.value == rep.rhs.value,
             "seed " + str(static_cast<long long>(seed)) + ": ebr " + str(rep.lhs.value) + " vs mixed " + str(rep.rhs.value));
      if (seen) expect(*seen == rep.lhs.value, "value depends on the seed");
      seen = rep.lhs.value;
    }
    out += str(*seen) + " ";
  }
  return str(static_cast<long long>(cases.size())) + " fixtures x 3 seeds, values " + out;
}

std::string c8_converse() {
  Fx f;
  struct Case {
    std::vector<std::string> xs;
    std::vector<GradedSubmodule<Q>> es;
    bool positive;
  };
  std::vector<Case> cases{
      {{"x1*t1", "x2*t1"}, {f.m, f.m}, true},
      {{"x1*t1", "x2*t1"}, {f.m, f.x2y}, true},
      {{"x1^2*t1", "x2*t1"}, {f.m, f.m}, false},
      {{"x1*t1 + x2*t1", "x1^2*t1 + x2^2*t1"}, {f.m, f.m2}, true},
      {{"x1^2*t1", "x2^2*t1"}, {f.m, f.m2}, false},
  };
  int pos = 0, neg = 0;
  for (const auto& c : cases) {
    auto rep = converse_criterion(polys(f.r21, c.xs), c.es, 6);
    expect(rep.consistent, "mismatch between multiplicities and the decider");
    bool eq = rep.lhs.value == rep.rhs.value;
    expect(eq == c.positive, "multiplicity equality not as expected");
    if (c.positive) {
      expect(rep.decision.verdict == Verdict::True && rep.decision.n0 && *rep.decision.n0 <= 6, "no confirmation");
      ++pos;
    } else {
      expect(rep.decision.verdict != Verdict::True, "confirmed a non-joint-reduction");
      expect(rep.decision.counterexample.has_value(), "no uncovered monomial reported");
      ++neg;
    }
  }
  return str(pos) + " confirmed, " + str(neg) + " refuted with a counterexample";
}

std::string c9_determinism() {
  namespace fs = std::filesystem;
  const fs::path golden = BRIM_GOLDEN_DIR;
  std::ifstream in(golden / "commands.txt");
  expect(static_cast<bool>(in), "missing golden command list");
  auto strip = [](const std::string& s) {
    auto j = nlohmann::json::parse(s);
    j.erase("timing");
    return j.dump(2) + "\n";
  };
  int count = 0;
  for (std::string line; std::getline(in, line);) {
    std::istringstream is(line);
    std::vector<std::string> w;
    for (std::string s; is >> s;) w.push_back(s);
    if (w.empty()) continue;
    std::vector<std::string> args(w.begin() + 2, w.end());
    args.insert(args.begin() + (args[0] == "check" ? 2 : 1), (golden / w[1]).string());
    auto go = [&](std::vector<std::string> a) {
      std::ostringstream out, err;
      int code = cli::run(a, out, err, cli::CacheConfig{false, {}});
      expect(code == 0, w[0] + " exited with " + str(code));
      return strip(out.str());
    };
    auto first = go(args);
    auto second = go(args);
    auto par = args;
    par.insert(par.end(), {"--threads", "4"});
    auto third = go(par);
    std::ifstream g(golden / (w[0] + ".golden.json"));
    std::stringstream ss;
    ss << g.rdbuf();
    expect(first == second, w[0] + ": two runs differ");
    expect(first == third, w[0] + ": sequential and parallel differ");
    expect(first == ss.str(), w[0] + ": differs from the golden file");
    ++count;
  }

  Fx f;
  TableTemplate<Q> tpl{{f.m, f.x2y}, true, 0, {}};
  std::vector<Axis> win{{"n1", 1, 4}, {"n2", 1, 4}, {"q", 0, 2}};
  expect(table(tpl, win) == table(tpl, win, TableOptions{4, nullptr}), "parallel table differs");
  ExtractOptions par;
  par.threads = 4;
  expect(mixed<Q>({f.m, f.x2y}, {1, 1}).table == mixed<Q>({f.m, f.x2y}, {1, 1}, par).table, "parallel extraction differs");
  return str(count) + " golden reports stable";
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  struct Criterion {
    int id;
    const char* title;
    std::function<std::string()> body;
    double budget;
  };
  std::vector<Criterion> cs{
      {1, "ebr fixtures against the staircase oracle", c1_ebr, 5},
      {2, "Rees' theorem suite", c2_rees, 60},
      {3, "power scaling", c3_power, 300},
      {4, "mixed multiplicity and corner table", c4_mixed, 300},
      {5, "last-argument scaling", c5_scaling, 300},
      {6, "Koszul bridge", c6_koszul, 300},
      {7, "Risler-Teissier", c7_risler, 300},
      {8, "converse criterion", c8_converse, 300},
      {9, "determinism", c9_determinism, 300},
  };
  auto start = clock::now();
  int failures = 0;
  for (const auto& c : cs) {
    auto t0 = clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failed& e) {
      ok = false;
      detail = e.what;
    } catch (const Error& e) {
      ok = false;
      if (e.kind() == ErrorKind::NoStabilization) saw_no_stabilization = true;
      detail = e.what();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double s = std::chrono::duration<double>(clock::now() - t0).count();
    if (ok && s > c.budget) {
      ok = false;
      detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    failures += ok ? 0 : 1;
    std::printf("%s %d %s [%.2f s]: %s\n", ok ? "PASS" : "FAIL", c.id, c.title, s, detail.c_str());
    std::fflush(stdout);
  }
  double total = std::chrono::duration<double>(clock::now() - start).count();
  bool ok10 = total < 300 && !saw_no_stabilization;
  failures += ok10 ? 0 : 1;
  std::printf("%s 10 performance envelope [%.2f s]: %s\n", ok10 ? "PASS" : "FAIL", total,
              saw_no_stabilization ? "NoStabilization raised" : "whole suite under 300 s");
  return failures ? 1 : 0;
}
