#include "jacobi/certificate.hpp"

#include <set>
#include <sstream>

#include "jacobi/canonical.hpp"
#include "jacobi/elimination.hpp"
#include "jacobi/error.hpp"
#include "jacobi/reduction.hpp"
#include "jacobi/relations.hpp"
#include "jacobi/text.hpp"

namespace jacobi {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::StuExpand: return "STU-EXPAND";
    case StepKind::SlideJoin: return "SLIDE-JOIN";
    case StepKind::CanonicalZero: return "CANONICAL-ZERO";
    case StepKind::OracleSolved: return "ORACLE-SOLVED";
  }
  return "?";
}

namespace {

std::string children_text(const LinearCombination& lc) {
  std::string out;
  for (const auto& [d, c] : lc.terms()) {
    if (!out.empty()) out += ',';
    out += sgn(c) < 0 ? '-' : '+';
    mpq_class a = abs(c);
    if (a != 1) out += format_rational(a) + "*";
    out += d;
  }
  return out;
}

}  // namespace

std::string serialize_certificate(const Certificate& cert) {
  std::string out;
  std::string sk = to_text(*cert.skeleton);
  out += "SKELETON " + sk.substr(std::string_view("skeleton ").size()) + "\n";
  out += "INPUT " + cert.input + "\n";
  for (const auto& s : cert.steps) {
    out += "STEP " + std::to_string(s.index) + " " + std::string(to_string(s.kind)) +
           " parent=" + s.parent + " at=" + s.location + " ->";
    std::string kids = children_text(s.children);
    if (!kids.empty()) out += " " + kids;
    out += "\n";
  }
  out += "RESULT";
  bool first = true;
  for (const auto& [d, c] : cert.result.terms()) {
    out += first ? " " : ", ";
    out += d + ":" + format_rational(c);
    first = false;
  }
  out += "\n";
  return out;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

StepKind parse_kind(const std::string& w, int line) {
  for (auto k : {StepKind::StuExpand, StepKind::SlideJoin, StepKind::CanonicalZero,
                 StepKind::OracleSolved}) {
    if (w == to_string(k)) return k;
  }
  throw ParseError(line, "unknown step kind '" + w + "'");
}

LinearCombination parse_children(std::string_view text, int line) {
  LinearCombination out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (item.size() < 2 || (item[0] != '+' && item[0] != '-')) {
      throw ParseError(line, "bad child '" + std::string(item) + "'");
    }
    const int sign = item[0] == '-' ? -1 : 1;
    item.remove_prefix(1);
    mpq_class c = 1;
    auto star = item.find('*');
    if (star != std::string_view::npos) {
      try {
        c = parse_rational(item.substr(0, star));
      } catch (const Error&) {
        throw ParseError(line, "bad coefficient in '" + std::string(item) + "'");
      }
      item.remove_prefix(star + 1);
    }
    if (item.empty()) throw ParseError(line, "child without digest");
    out.add(std::string(item), sign * c);
    start = end + 1;
  }
  return out;
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  auto lines = split_lines(text);
  Certificate cert;
  std::size_t i = 0;
  auto line_no = [&](std::size_t k) { return static_cast<int>(k) + 1; };
  auto need = [&](std::string_view prefix) {
    if (i >= lines.size()) {
      throw ParseError(line_no(i), "truncated certificate: expected " + std::string(prefix));
    }
    if (!starts_with(lines[i], prefix)) {
      throw ParseError(line_no(i), "expected " + std::string(prefix) + ", found '" + lines[i] + "'");
    }
  };

  need("SKELETON ");
  try {
    cert.skeleton = parse_skeleton("skeleton " + lines[i].substr(9));
  } catch (const ParseError& e) {
    throw ParseError(line_no(i), std::string("bad skeleton: ") + e.what());
  }
  ++i;
  need("INPUT ");
  cert.input = lines[i].substr(6);
  if (cert.input.empty() || words(cert.input).size() != 1) {
    throw ParseError(line_no(i), "INPUT needs exactly one digest");
  }
  ++i;

  while (i < lines.size() && starts_with(lines[i], "STEP ")) {
    const std::string& l = lines[i];
    const int ln = line_no(i);
    auto arrow = l.find(" ->");
    if (arrow == std::string::npos) throw ParseError(ln, "STEP line lacks '->'");
    auto head = words(std::string_view(l).substr(0, arrow));
    if (head.size() != 5 || !starts_with(head[3], "parent=") || !starts_with(head[4], "at=")) {
      throw ParseError(ln, "STEP needs: STEP <k> <KIND> parent=<digest> at=<token> -> ...");
    }
    CertificateStep step;
    try {
      step.index = std::stoi(head[1]);
    } catch (const std::exception&) {
      throw ParseError(ln, "bad step number '" + head[1] + "'");
    }
    if (step.index != static_cast<int>(cert.steps.size()) + 1) {
      throw ParseError(ln, "step number " + head[1] + " out of sequence");
    }
    step.kind = parse_kind(head[2], ln);
    step.parent = head[3].substr(7);
    step.location = head[4].substr(3);
    if (step.parent.empty() || step.location.empty()) throw ParseError(ln, "empty parent or location");
    std::string_view rest = std::string_view(l).substr(arrow + 3);
    if (!rest.empty()) {
      if (rest[0] != ' ') throw ParseError(ln, "expected a space after '->'");
      rest.remove_prefix(1);
    }
    step.children = parse_children(rest, ln);
    cert.steps.push_back(std::move(step));
    ++i;
  }

  need("RESULT");
  {
    const std::string& l = lines[i];
    const int ln = line_no(i);
    std::string_view rest = std::string_view(l).substr(6);
    if (!rest.empty()) {
      if (rest[0] != ' ') throw ParseError(ln, "bad RESULT line");
      rest.remove_prefix(1);
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto end = rest.find(", ", start);
        if (end == std::string_view::npos) end = rest.size();
        std::string_view item = rest.substr(start, end - start);
        auto colon = item.find(':');
        if (colon == std::string_view::npos || colon == 0) {
          throw ParseError(ln, "bad RESULT term '" + std::string(item) + "'");
        }
        try {
          cert.result.add(std::string(item.substr(0, colon)), parse_rational(item.substr(colon + 1)));
        } catch (const ParseError&) {
          throw;
        } catch (const Error&) {
          throw ParseError(ln, "bad coefficient in '" + std::string(item) + "'");
        }
        start = end + 2;
      }
    }
    ++i;
  }
  while (i < lines.size() && lines[i].empty()) ++i;
  if (i < lines.size()) throw ParseError(line_no(i), "unexpected content after RESULT");
  return cert;
}

LinearCombination replay(const Certificate& cert) {
  LinearCombination state = LinearCombination::single(cert.input);
  std::set<std::string> defined{cert.input};
  for (const auto& s : cert.steps) {
    if (!defined.count(s.parent)) {
      throw Error(ErrorCode::UnknownDigest, s.parent,
                  "step " + std::to_string(s.index) + " rewrites undefined digest '" + s.parent + "'");
    }
    const mpq_class c = state.coefficient(s.parent);
    state.add(s.parent, -c);
    state.add(s.children, c);
    for (const auto& [d, k] : s.children.terms()) defined.insert(d);
  }
  return state;
}

namespace {

std::optional<LinearCombination> regenerate(const Certificate& cert, const CertificateStep& s,
                                            std::string& why) {
  Diagram parent = diagram_from_digest(cert.skeleton, s.parent);
  const CanonicalDiagram cp = canonicalize(parent);
  if (cp.digest != s.parent) {
    why = "parent digest is not canonical";
    return std::nullopt;
  }
  LinearCombination out;
  switch (s.kind) {
    case StepKind::StuExpand: {
      const int leg = parse_canonical_leg_token(s.location);
      if (leg < 0 || leg >= parent.leg_count() || parent.is_leg(parent.partner(leg))) {
        why = "location '" + s.location + "' is not a vertex-adjacent leg";
        return std::nullopt;
      }
      auto ex = stu_expand(parent, leg);
      out.add(canonicalize(ex.t_term), 1);
      out.add(canonicalize(ex.u_term), -1);
      return out;
    }
    case StepKind::SlideJoin: {
      auto dot1 = s.location.find('.');
      auto dot2 = dot1 == std::string::npos ? dot1 : s.location.find('.', dot1 + 1);
      if (dot2 == std::string::npos) {
        why = "slide location must be l<i>.<p>.<q>";
        return std::nullopt;
      }
      const int label = parse_canonical_leg_token(s.location.substr(0, dot1));
      int p = -1, q = -1;
      try {
        p = std::stoi(s.location.substr(dot1 + 1, dot2 - dot1 - 1));
        q = std::stoi(s.location.substr(dot2 + 1));
      } catch (const std::exception&) {
      }
      if (label < 0 || label >= parent.leg_count() || p < 1 || q < 1) {
        why = "bad slide location '" + s.location + "'";
        return std::nullopt;
      }
      InterleaveRecord rec{parent.leg_component(label), parent.leg_slot(label), p, q};
      try {
        auto terms = slide_terms(parent, rec);
        out.add(canonicalize(terms.sigma), 1);
        for (const auto& j : terms.joined) out.add(canonicalize(j), 1);
      } catch (const Error& e) {
        why = e.what();
        return std::nullopt;
      }
      return out;
    }
    case StepKind::CanonicalZero:
      if (!cp.is_zero()) {
        why = "parent is not killed by antisymmetry";
        return std::nullopt;
      }
      return out;
    case StepKind::OracleSolved:
      return s.children;
  }
  return std::nullopt;
}

}  // namespace

VerificationReport verify_certificate(const Certificate& cert, const RelationSystem& sys) {
  return verify_certificate(cert, sys, SpanSolver(sys));
}

VerificationReport verify_certificate(const Certificate& cert, const RelationSystem& sys,
                                      const SpanSolver& solver) {
  if (!cert.skeleton || !cert.skeleton->same_shape(*sys.skeleton)) {
    throw Error(ErrorCode::BasisMismatch, {}, "certificate skeleton differs from the system's");
  }
  const int n = digest_degree(cert.input);
  if (n != sys.degree) {
    throw Error(ErrorCode::DegreeMismatch, cert.input,
                "certificate has degree " + std::to_string(n) + ", system has " +
                    std::to_string(sys.degree));
  }
  auto check_degree = [&](const std::string& d) {
    if (digest_degree(d) != n) {
      throw Error(ErrorCode::DegreeMismatch, d, "digest '" + d + "' has the wrong degree");
    }
  };
  auto fail = [](int step, std::string msg) { return VerificationReport{false, step, std::move(msg)}; };

  LinearCombination state = LinearCombination::single(cert.input);
  std::set<std::string> defined{cert.input};
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    const int k = static_cast<int>(i) + 1;
    const std::string label = "step " + std::to_string(k) + " (" + std::string(to_string(s.kind)) + ")";
    check_degree(s.parent);
    for (const auto& [d, c] : s.children.terms()) check_degree(d);
    if (!defined.count(s.parent)) {
      throw Error(ErrorCode::UnknownDigest, s.parent,
                  label + " rewrites undefined digest '" + s.parent + "'");
    }
    if (s.kind == StepKind::OracleSolved && i + 1 != cert.steps.size()) {
      return fail(k, label + ": ORACLE-SOLVED must be the last step");
    }
    std::string why;
    auto expected = regenerate(cert, s, why);
    if (!expected) return fail(k, label + ": " + why);
    if (s.kind == StepKind::OracleSolved) {
      LinearCombination v = LinearCombination::of(canonicalize(diagram_from_digest(cert.skeleton, s.parent)));
      v -= s.children;
      bool ok = false;
      try {
        ok = solver.contains(v);
      } catch (const Error& e) {
        return fail(k, label + ": " + e.what());
      }
      if (!ok) return fail(k, label + ": parent minus children is not in the relation span");
    } else if (!(*expected == s.children)) {
      return fail(k, label + ": children differ from regenerated terms; expected " +
                         children_text(*expected) + ", recorded " + children_text(s.children));
    }
    const mpq_class c = state.coefficient(s.parent);
    state.add(s.parent, -c);
    state.add(s.children, c);
    for (const auto& [d, x] : s.children.terms()) defined.insert(d);
  }
  for (const auto& [d, c] : cert.result.terms()) check_degree(d);
  if (!(state == cert.result)) {
    return fail(0, "replayed steps give " + to_string(state) + ", RESULT states " + to_string(cert.result));
  }
  LinearCombination v = LinearCombination::of(canonicalize(diagram_from_digest(cert.skeleton, cert.input)));
  v -= cert.result;
  try {
    if (!solver.contains(v)) return fail(0, "input minus RESULT is not in the relation span");
  } catch (const Error& e) {
    return fail(0, e.what());
  }
  return {true, -1, "OK"};
}

}  // namespace jacobi
