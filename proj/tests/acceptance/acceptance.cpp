// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "common.hpp"
#include "jacobi/certificate.hpp"
#include "jacobi/clasper.hpp"
#include "jacobi/elimination.hpp"
#include "jacobi/reduction.hpp"
#include "jacobi/relations.hpp"
#include "jacobi/stu.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

struct Outcome {
  long violations = 0;
  long checked = 0;
  std::string note;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0 = untimed
  std::function<Outcome()> run;
};

void expect(Outcome& o, bool ok) {
  ++o.checked;
  if (!ok) ++o.violations;
}

bool is_tree(const SkeletonPtr& sk, const std::string& digest) {
  return oracle::betti(diagram_from_digest(sk, digest)) == 0;
}

bool all_trees(const SkeletonPtr& sk, const LinearCombination& lc) {
  for (const auto& [d, c] : lc.terms()) {
    if (!is_tree(sk, d)) return false;
  }
  return true;
}

// Vertices lying on a cycle of the internal graph.
std::vector<char> on_cycle(const Diagram& d) {
  const int t = d.vertex_count();
  std::vector<char> on(t, 0);
  for (int h = 0; h < d.half_edge_count(); ++h) {
    const int g = d.partner(h);
    if (d.is_leg(h) || d.is_leg(g) || h > g) continue;
    const int x = d.vertex_of(h), y = d.vertex_of(g);
    if (x == y) {
      on[x] = 1;
      continue;
    }
    std::vector<char> seen(t, 0);
    std::vector<int> stack{x};
    seen[x] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int q : d.vertex(v)) {
        if (q == h || q == g) continue;
        int w = d.vertex_of(d.partner(q));
        if (w >= 0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (seen[y]) on[x] = on[y] = 1;
  }
  return on;
}

// ---------------------------------------------------------------- criteria

Outcome base_case() {
  Outcome o;
  auto sk = make_skeleton("interval");
  for (int n = 1; n <= 3; ++n) {
    for (const auto& c : enumerate_classes({sk, n, kFilterTrees})) {
      auto d = diagram_from_digest(sk, c.canonical.digest);
      auto r = reduce_to_trees(d);
      expect(o, r.certificate.steps.empty() && r.combination == LinearCombination::of(c.canonical) &&
                    r.certificate.result == LinearCombination::single(c.canonical.digest));
    }
  }
  o.note = std::to_string(o.checked) + " tree classes";
  return o;
}

Outcome theta() {
  Outcome o;
  auto d = fixtures::theta();
  auto sk = d.skeleton_ptr();
  auto r = reduce_to_trees(d);
  const auto& steps = r.certificate.steps;
  expect(o, steps.size() == 1 && steps[0].kind == StepKind::StuExpand);
  if (steps.size() == 1) {
    // regenerate the step's two expansion terms from the certificate alone
    auto parent = diagram_from_digest(sk, steps[0].parent);
    auto ex = stu_expand(parent, parse_canonical_leg_token(steps[0].location));
    expect(o, is_tree_diagram(ex.t_term) && is_tree_diagram(ex.u_term));
    LinearCombination two_terms = LinearCombination::of(canonicalize(ex.t_term));
    two_terms -= LinearCombination::of(canonicalize(ex.u_term));
    expect(o, r.certificate.result == two_terms);
    o.note = "T=" + canonicalize(ex.t_term).digest + " U=" + canonicalize(ex.u_term).digest +
             " (same class, opposite sign) so output is " + to_string(r.combination);
  }
  expect(o, all_trees(sk, r.combination));
  auto sys = generate_relations(sk, 2);
  expect(o, verify_certificate(r.certificate, sys).ok);
  expect(o, oracle::in_rational_span(sys.rows, LinearCombination::of(canonicalize(d)) - r.combination));
  return o;
}

Outcome exhaustive_claim() {
  Outcome o;
  auto sk = make_skeleton("interval");
  ReductionOptions opts;  // cycle-first, 10000 steps, linear-solve fallback
  int oracle_solved = 0;
  for (int n = 1; n <= 3; ++n) {
    auto sys = generate_relations(sk, n);
    SpanSolver solver(sys);
    opts.system = &sys;
    opts.solver = &solver;
    for (const auto& c : enumerate_classes({sk, n, kFilterConnected | kFilterNonzero})) {
      auto d = diagram_from_digest(sk, c.canonical.digest);
      auto t = express_in_tree_basis(d, sys);
      expect(o, t && all_trees(sk, *t) &&
                    oracle::in_rational_span(sys.rows, LinearCombination::of(c.canonical) - *t));
      auto r = reduce_to_trees(d, opts);
      oracle_solved += r.oracle_solved;
      expect(o, all_trees(sk, r.combination) &&
                    oracle::in_rational_span(sys.rows, LinearCombination::of(c.canonical) - r.combination) &&
                    verify_certificate(r.certificate, sys, solver).ok);
    }
  }
  o.note = std::to_string(o.checked / 2) + " connected classes, " + std::to_string(oracle_solved) +
           " needed the linear-solve fallback";
  return o;
}

Outcome bookkeeping() {
  Outcome o;
  auto sk = make_skeleton("interval");
  long steps = 0;
  for (auto strategy : {Strategy::cycle_first, Strategy::first_leg}) {
    ReductionOptions opts;
    opts.strategy = strategy;
    for (int n = 1; n <= 3; ++n) {
      for (const auto& c : enumerate_classes({sk, n, kFilterNonzero})) {
        auto r = reduce_to_trees(diagram_from_digest(sk, c.canonical.digest), opts);
        const auto& cert = r.certificate;
        expect(o, digest_degree(cert.input) == n);
        for (const auto& s : cert.steps) {
          ++steps;
          expect(o, digest_degree(s.parent) == n);
          for (const auto& [d, x] : s.children.terms()) expect(o, digest_degree(d) == n);
          if (s.kind != StepKind::StuExpand) continue;
          auto parent = diagram_from_digest(sk, s.parent);
          auto ex = stu_expand(parent, parse_canonical_leg_token(s.location));
          expect(o, edge_count(ex.t_term) == edge_count(parent) - 1);
          expect(o, edge_count(ex.u_term) == edge_count(parent) - 1);
          for (const auto& [d, x] : s.children.terms()) {
            expect(o, edge_count(diagram_from_digest(sk, d)) == edge_count(parent) - 1);
          }
        }
        for (const auto& [d, x] : cert.result.terms()) expect(o, digest_degree(d) == n);
      }
    }
  }
  o.note = std::to_string(steps) + " certificate steps";
  return o;
}

Outcome case_discrimination() {
  Outcome o;
  auto sk = make_skeleton("interval");
  int case1 = 0, case2 = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& c : enumerate_classes({sk, n})) {
      auto d = diagram_from_digest(sk, c.canonical.digest);
      auto cyc = on_cycle(d);
      auto parts = component_partition(d);
      for (int h = 0; h < d.half_edge_count(); ++h) {
        if (!d.is_leg(h) || d.is_leg(d.partner(h))) continue;
        auto res = step_move9(d, h);
        const auto& ex = res.expansion;
        if (cyc[d.vertex_of(d.partner(h))]) {
          ++case1;
          for (const Diagram* term : {&ex.t_term, &ex.u_term}) {
            auto tp = component_partition(*term);
            expect(o, tp.of_half_edge[ex.a] == tp.of_half_edge[ex.b] && tp.count == parts.count);
          }
          expect(o, res.which() == 1);
        }
        if (res.split) {
          ++case2;
          const int whole = component_degree(d, parts, parts.of_half_edge[h]);
          expect(o, res.split->degree1 + res.split->degree2 == whole);
          if (parts.count == 1) expect(o, res.split->degree1 + res.split->degree2 == n);
        }
      }
    }
  }
  o.note = std::to_string(case1) + " cycle expansions, " + std::to_string(case2) + " Case-2 splits";
  return o;
}

Outcome canonicalization() {
  Outcome o;
  std::mt19937_64 rng(1729);
  std::vector<Diagram> samples{fixtures::theta(),
                               fixtures::y_diagram(),
                               fixtures::chord(),
                               fixtures::tadpole(),
                               fixtures::diagram("tadpole.dg"),
                               fixtures::diagram("bigon_pendant.dg"),
                               fixtures::diagram("theta_circle.dg"),
                               shadow(fixtures::load("dumbbell.dg").claspers.front())};
  for (const auto& d : samples) {
    const auto c = canonicalize(d);
    if (!c.is_zero()) {
      expect(o, canonicalize(diagram_from_digest(d.skeleton_ptr(), c.digest)) == CanonicalDiagram{c.digest, 1});
    }
    for (int i = 0; i < 1000; ++i) expect(o, canonicalize(relabeled(d, rng)) == c);
  }
  for (const auto& d : {fixtures::tadpole(), fixtures::diagram("tadpole.dg")}) {
    expect(o, canonicalize(d).is_zero());
    expect(o, oracle::killed_by_symmetry(d));
    auto r = reduce_to_trees(d);
    expect(o, r.combination.empty());
    auto sys = generate_relations(d.skeleton_ptr(), degree(d));
    expect(o, verify_certificate(r.certificate, sys).ok);
    // STU at the loop vertex: T and U are the same class with the same
    // sign, so D = T - U is zero modulo the rows.
    auto ex = stu_expand(d, vertex_adjacent_legs(d).front());
    LinearCombination diff = LinearCombination::of(canonicalize(ex.t_term));
    diff -= LinearCombination::of(canonicalize(ex.u_term));
    expect(o, oracle::in_rational_span(sys.rows, diff) && in_span(diff, sys).has_value());
  }
  o.note = std::to_string(samples.size()) + " fixtures x 1000 relabelings";
  return o;
}

Outcome ihx() {
  Outcome o;
  auto sk = make_skeleton("interval");
  for (int n = 1; n <= 3; ++n) {
    auto sys = generate_relations(sk, n);
    for (const auto& c : enumerate_classes({sk, n})) {
      auto d = diagram_from_digest(sk, c.canonical.digest);
      for (const auto& t : ihx_instances(d)) expect(o, oracle::in_rational_span(sys.rows, ihx_row(t)));
    }
  }
  o.note = std::to_string(o.checked) + " IHX instances";
  return o;
}

Outcome ranks() {
  Outcome o;
  struct Case {
    const char* shape;
    int n;
  };
  std::string note;
  for (auto [shape, n] : {Case{"interval", 1}, Case{"interval", 2}, Case{"interval", 3}, Case{"circle", 1},
                          Case{"circle", 2}}) {
    auto sys = generate_relations(make_skeleton(shape), n);
    const int b = static_cast<int>(sys.basis.size());
    const int sparse = b - sparse_rank(sys);
    const int dense = b - dense_rank(sys);
    expect(o, sparse == dense);
    expect(o, sparse == b - oracle::rational_rank(sys.rows));
    if (std::string(shape) == "interval" && n == 1) expect(o, sys.rows.empty() && sparse == 1);
    note += std::string(note.empty() ? "" : " ") + shape + "/" + std::to_string(n) + "=" + std::to_string(sparse);
  }
  o.note = "quotient ranks " + note;
  return o;
}

Outcome ledger() {
  Outcome o;
  auto db = fixtures::load("dumbbell.dg").claspers.front();
  ReductionOptions opts;
  opts.strategy = Strategy::first_leg;  // reaches Case 2 splits on this clasper
  auto r = reduce_clasper(db, opts);
  auto rederived = ledger_from_certificate(r.certificate);
  expect(o, !rederived.entries.empty());
  expect(o, rederived.entries == r.ledger.entries);
  for (const auto& e : rederived.entries) expect(o, e.bound() >= 4);
  auto sys = generate_relations(db.skeleton, 4);
  expect(o, verify_certificate(r.certificate, sys).ok);
  std::string entries;
  for (const auto& e : rederived.entries) {
    entries += " " + std::string(to_string(e.kind)) + "(" + std::to_string(e.n1) + "+" + std::to_string(e.n2) + ")";
  }
  o.note = "ledger:" + entries;
  return o;
}

int run_cli(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(JACOBI_CLI_PATH) + " " + args + " > " + out_file + " 2> " + out_file + ".err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome tooling() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "acceptance_cli";
  fs::create_directories(dir);
  int verified = 0;
  for (const char* name : {"chord.dg", "theta.dg", "theta_circle.dg", "tadpole.dg", "bigon_pendant.dg",
                           "theta_clasper.dg", "dumbbell.dg"}) {
    for (const char* strategy : {"cycle-first", "first-leg"}) {
      const std::string cert = (dir / (std::string(name) + "." + strategy + ".cert")).string();
      const std::string out1 = (dir / "out1").string(), out2 = (dir / "out2").string();
      const std::string args = "reduce --in " + fixtures::path(name) + " --strategy " + strategy + " --cert " + cert;
      expect(o, run_cli(args, out1) == 0);
      expect(o, run_cli(args, out2) == 0);
      expect(o, slurp(out1) == slurp(out2) && !slurp(out1).empty());
      const auto doc = fixtures::load(name);
      const std::size_t items = doc.diagrams.size() + doc.claspers.size();
      std::vector<std::string> certs;
      if (items == 1) {
        certs.push_back(cert);
      } else {
        for (const auto& [n, d] : doc.diagrams) certs.push_back(cert + "." + n);
        for (const auto& c : doc.claspers) certs.push_back(cert + "." + c.name);
      }
      for (const auto& c : certs) {
        const std::string v1 = (dir / "v1").string(), v2 = (dir / "v2").string();
        const bool ok = run_cli("verify --cert " + c, v1) == 0 && slurp(v1) == "OK\n";
        expect(o, ok);
        expect(o, run_cli("verify --cert " + c, v2) == 0 && slurp(v1) == slurp(v2));
        verified += ok;
      }
    }
  }
  // the documented example, with explicit degree and skeleton name
  {
    const std::string cert = (dir / "theta.cert").string();
    expect(o, run_cli("reduce --in " + fixtures::path("theta.dg") + " --strategy cycle-first --cert " + cert,
                      (dir / "o").string()) == 0);
    expect(o, run_cli("verify --cert " + cert + " --degree 2 --skeleton S", (dir / "v").string()) == 0);
  }
  const std::string bad = (dir / "bad").string();
  expect(o, run_cli("validate --in " + fixtures::path("bad.dg"), bad) == 1);
  expect(o, slurp(bad + ".err").find("q9") != std::string::npos);
  expect(o, run_cli("rank --degree 2 --frobnicate", bad) == 2);
  const std::string r1 = (dir / "r1").string(), r2 = (dir / "r2").string();
  expect(o, run_cli("enumerate --degree 3 --filter connected", r1) == 0);
  expect(o, run_cli("enumerate --degree 3 --filter connected", r2) == 0);
  expect(o, slurp(r1) == slurp(r2));
  o.note = std::to_string(verified) + " certificates verified by the CLI";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "base case: trees reduce to themselves", 5, base_case},
      {2, "theta fixture", 1, theta},
      {3, "connected classes reduce to verified trees", 60, exhaustive_claim},
      {4, "step bookkeeping", 0, bookkeeping},
      {5, "case discrimination", 0, case_discrimination},
      {6, "canonicalization", 10, canonicalization},
      {7, "derived IHX", 30, ihx},
      {8, "rank agreement", 0, ranks},
      {9, "ledger soundness", 30, ledger},
      {10, "tooling determinism", 0, tooling},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool slow = c.limit_seconds > 0 && secs >= c.limit_seconds;
    const bool pass = error.empty() && o.violations == 0 && o.checked > 0 && !slow;
    failed += !pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " | " << c.title << " | checks=" << o.checked
         << " violations=" << o.violations << " | " << secs << "s";
    if (c.limit_seconds > 0) line << " (limit " << c.limit_seconds << "s)";
    if (!o.note.empty()) line << " | " << o.note;
    if (!error.empty()) line << " | error: " << error;
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
