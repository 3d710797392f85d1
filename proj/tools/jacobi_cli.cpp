// jacobi: batch front end for the diagram engine.
//
// Exit status: 0 success, 1 domain error, 2 usage or parse error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "jacobi/canonical.hpp"
#include "jacobi/certificate.hpp"
#include "jacobi/clasper.hpp"
#include "jacobi/elimination.hpp"
#include "jacobi/enumeration.hpp"
#include "jacobi/reduction.hpp"
#include "jacobi/relations.hpp"
#include "jacobi/text.hpp"

namespace {

using namespace jacobi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

bool is_shape(const std::string& s) {
  std::stringstream ss(s);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, ',')) {
    if (part != "interval" && part != "circle") return false;
    any = true;
  }
  return any;
}

// A shape string, a file holding a skeleton declaration, or the name of
// `known` (the skeleton recorded in a certificate).
SkeletonPtr resolve_skeleton(const std::string& arg, const SkeletonPtr& known = nullptr) {
  if (is_shape(arg)) return make_skeleton(arg);
  if (known && known->name() == arg) return known;
  if (std::filesystem::is_regular_file(arg)) {
    Document doc = parse_document(read_file(arg));
    if (doc.skeletons.empty()) throw UsageError("'" + arg + "' declares no skeleton");
    return doc.skeletons.front();
  }
  throw UsageError("unknown skeleton '" + arg + "' (give a shape such as interval,circle, "
                   "a file, or the certificate's skeleton name)");
}

struct Options {
  std::string in;
  std::string cert;
  std::string skeleton;
  std::string strategy = "cycle-first";
  std::string fallback = "linear-solve";
  std::string filter = "all";
  std::string name;
  int degree = 0;
  int max_steps = 10000;
  std::optional<std::uint64_t> seed;
};

int cmd_validate(const Options& o) {
  Document doc = parse_document(read_file(o.in));
  int failures = 0;
  for (const auto& [name, d] : doc.diagrams) {
    const auto c = canonicalize(d);
    std::cout << "diagram " << name << ": ok degree=" << degree(d) << " edges=" << edge_count(d)
              << " betti=" << betti(d) << " connected=" << (is_connected(d) ? 1 : 0)
              << " tree=" << (is_tree_diagram(d) ? 1 : 0) << " digest=" << c.digest
              << " sign=" << (c.is_zero() ? std::string("ZERO") : std::to_string(c.sign)) << "\n";
    if (o.seed) {
      std::mt19937_64 rng(*o.seed);
      int bad = 0;
      for (int i = 0; i < 100; ++i) {
        if (canonicalize(relabeled(d, rng)) != c) ++bad;
      }
      std::cout << "diagram " << name << ": relabelings=100 mismatches=" << bad << "\n";
      if (bad) ++failures;
    }
  }
  for (const auto& c : doc.claspers) {
    auto issues = validate_clasper(c);
    if (issues.empty()) {
      std::cout << "clasper " << c.name << ": ok degree=" << degree(c)
                << " simple=" << (is_simple(c) ? 1 : 0) << "\n";
      continue;
    }
    ++failures;
    for (const auto& i : issues) {
      std::cerr << "clasper " << c.name << ": " << to_string(i.code) << " at '" << i.token
                << "': " << i.message << "\n";
    }
  }
  return failures ? 1 : 0;
}

ReductionOptions reduction_options(const Options& o) {
  ReductionOptions r;
  r.strategy = parse_strategy(o.strategy);
  r.fallback = parse_fallback(o.fallback);
  r.max_steps = o.max_steps;
  return r;
}

std::string format_ledger(const Ledger& l) {
  std::string out;
  for (const auto& e : l.entries) {
    out += " " + std::string(to_string(e.kind)) + "(" + std::to_string(e.n1) + "+" +
           std::to_string(e.n2) + ")";
  }
  return out.empty() ? " none" : out;
}

int cmd_reduce(const Options& o) {
  Document doc = parse_document(read_file(o.in));
  const ReductionOptions opts = reduction_options(o);

  struct Item {
    std::string name;
    const Diagram* diagram = nullptr;
    const Clasper* clasper = nullptr;
  };
  std::vector<Item> items;
  for (const auto& [name, d] : doc.diagrams) items.push_back({name, &d, nullptr});
  for (const auto& c : doc.claspers) items.push_back({c.name, nullptr, &c});
  if (!o.name.empty()) {
    std::erase_if(items, [&](const Item& i) { return i.name != o.name; });
    if (items.empty()) throw UsageError("no diagram or clasper named '" + o.name + "'");
  }
  if (items.empty()) throw UsageError("'" + o.in + "' declares no diagram or clasper");

  int failures = 0;
  for (const auto& item : items) {
    try {
      Certificate cert;
      if (item.diagram) {
        auto r = reduce_to_trees(*item.diagram, opts);
        std::cout << item.name << " = " << (r.combination.empty() ? std::string("0") : to_string(r.combination)) << "\n";
        cert = std::move(r.certificate);
      } else {
        auto r = reduce_clasper(*item.clasper, opts);
        std::cout << item.name << " = " << (r.combination.empty() ? std::string("0") : to_string(r.combination)) << "\n";
        std::cout << item.name << " ledger:" << format_ledger(r.ledger) << "\n";
        cert = std::move(r.certificate);
      }
      std::cout << item.name << " steps=" << cert.steps.size() << "\n";
      if (!o.cert.empty()) {
        write_file(items.size() == 1 ? o.cert : o.cert + "." + item.name, serialize_certificate(cert));
      }
    } catch (const Error& e) {
      std::cerr << item.name << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures ? 1 : 0;
}

int cmd_verify(const Options& o) {
  Certificate cert = parse_certificate(read_file(o.cert));
  SkeletonPtr sk = o.skeleton.empty() ? cert.skeleton : resolve_skeleton(o.skeleton, cert.skeleton);
  if (!sk->same_shape(*cert.skeleton)) {
    std::cerr << "BasisMismatch: skeleton " << sk->shape() << " differs from the certificate's "
              << cert.skeleton->shape() << "\n";
    return 1;
  }
  const int n = o.degree > 0 ? o.degree : digest_degree(cert.input);
  RelationSystem sys = generate_relations(cert.skeleton, n);
  VerificationReport rep = verify_certificate(cert, sys);
  if (rep.ok) {
    std::cout << "OK\n";
    return 0;
  }
  std::cout << "FAIL " << (rep.failing_step > 0 ? "step " + std::to_string(rep.failing_step) : "result")
            << "\n";
  std::cerr << rep.diagnostics << "\n";
  return 1;
}

int cmd_rank(const Options& o) {
  SkeletonPtr sk = resolve_skeleton(o.skeleton.empty() ? "interval" : o.skeleton);
  if (o.degree < 1) throw UsageError("--degree must be positive");
  DimensionReport r = dimension_report(sk, o.degree);
  std::cout << "skeleton=" << sk->shape() << "\n"
            << "degree=" << o.degree << "\n"
            << "total_classes=" << r.total_classes << "\n"
            << "relation_rows=" << r.relation_rows << "\n"
            << "relation_rank=" << r.relation_rank << "\n"
            << "dense_relation_rank=" << r.dense_relation_rank << "\n"
            << "quotient_rank=" << r.quotient_rank << "\n"
            << "tree_span_rank=" << r.tree_span_rank << "\n"
            << "connected_classes=" << r.connected_classes << "\n"
            << "connected_in_tree_span=" << r.connected_in_tree_span << "\n";
  return 0;
}

int cmd_enumerate(const Options& o) {
  SkeletonPtr sk = resolve_skeleton(o.skeleton.empty() ? "interval" : o.skeleton);
  if (o.degree < 1) throw UsageError("--degree must be positive");
  EnumerationSpec spec{sk, o.degree, parse_filters(o.filter)};
  auto classes = enumerate_classes(spec);
  std::cout << to_text(*sk) << "\n";
  int k = 0;
  for (const auto& c : classes) {
    std::cout << c.canonical.digest << " " << canonical_text(sk, c.canonical.digest, "D" + std::to_string(++k))
              << (c.canonical.is_zero() ? " # zero" : "") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi diagram reduction, verification and enumeration"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check diagrams and claspers in a file");
  validate->add_option("--in", o.in, "input file")->required();
  validate->add_option("--seed", o.seed, "also run 100 random relabelings per diagram");

  auto* reduce = app.add_subcommand("reduce", "reduce diagrams and claspers to tree combinations");
  reduce->add_option("--in", o.in, "input file")->required();
  reduce->add_option("--cert", o.cert, "certificate output path");
  reduce->add_option("--name", o.name, "only reduce the item with this name");
  reduce->add_option("--strategy", o.strategy, "cycle-first | nearest-cycle | first-leg")
      ->check(CLI::IsMember({"cycle-first", "nearest-cycle", "first-leg"}));
  reduce->add_option("--max-steps", o.max_steps, "rewrite step budget")->check(CLI::PositiveNumber);
  reduce->add_option("--fallback", o.fallback, "error | linear-solve")
      ->check(CLI::IsMember({"error", "linear-solve"}));

  auto* verify = app.add_subcommand("verify", "check a certificate against the relation span");
  verify->add_option("--cert", o.cert, "certificate path")->required();
  verify->add_option("--degree", o.degree, "degree of the relation system");
  verify->add_option("--skeleton", o.skeleton, "skeleton name, shape or file");

  auto* rank = app.add_subcommand("rank", "dimension report for one skeleton and degree");
  rank->add_option("--degree", o.degree, "degree")->required();
  rank->add_option("--skeleton", o.skeleton, "shape (e.g. interval,circle) or file");

  auto* enumerate = app.add_subcommand("enumerate", "list isomorphism classes");
  enumerate->add_option("--degree", o.degree, "degree")->required();
  enumerate->add_option("--skeleton", o.skeleton, "shape (e.g. interval,circle) or file");
  enumerate->add_option("--filter", o.filter, "all | connected | trees | nonzero, '+'-joined");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*reduce) return cmd_reduce(o);
    if (*verify) return cmd_verify(o);
    if (*rank) return cmd_rank(o);
    if (*enumerate) return cmd_enumerate(o);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::Parse ? 2 : 1;
  }
  return 2;
}
