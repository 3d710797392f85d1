#include "jacobi/text.hpp"

#include <cctype>

#include "jacobi/canonical.hpp"
#include "jacobi/error.hpp"

namespace jacobi {

namespace {

struct Token {
  enum Kind { ident, punct, end } kind = end;
  std::string text;
  int line = 1;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '.' ||
         c == '\'';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Token::ident, std::string(text.substr(i, j - i)), line});
      i = j;
    } else if (std::string_view("{};:,@()-").find(c) != std::string_view::npos) {
      out.push_back({Token::punct, std::string(1, c), line});
      ++i;
    } else {
      throw ParseError(line, "unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Token::end, "", line});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Document document() {
    Document doc;
    while (peek().kind != Token::end) {
      const Token& t = peek();
      if (t.text == "skeleton") {
        doc.skeletons.push_back(skeleton());
      } else if (t.text == "diagram") {
        diagram(doc);
      } else if (t.text == "clasper") {
        clasper(doc);
      } else {
        throw ParseError(t.line, "expected 'skeleton', 'diagram' or 'clasper', found '" + t.text + "'");
      }
    }
    return doc;
  }

  SkeletonPtr skeleton() {
    expect_word("skeleton");
    std::string name = ident("skeleton name");
    expect("{");
    std::vector<SkeletonComponent> comps;
    while (!accept("}")) {
      const Token& kind = next();
      ComponentKind k;
      if (kind.text == "interval") {
        k = ComponentKind::interval;
      } else if (kind.text == "circle") {
        k = ComponentKind::circle;
      } else {
        throw ParseError(kind.line, "expected 'interval' or 'circle', found '" + kind.text + "'");
      }
      comps.push_back({ident("component id"), k});
      expect(";");
    }
    try {
      return std::make_shared<const Skeleton>(name, std::move(comps));
    } catch (const Error& e) {
      throw ParseError(peek().line, e.what());
    }
  }

  void finish() {
    if (peek().kind != Token::end) throw ParseError(peek().line, "trailing input '" + peek().text + "'");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    if (toks_[pos_].kind == Token::end) throw ParseError(toks_[pos_].line, "unexpected end of input");
    return toks_[pos_++];
  }
  bool accept(std::string_view p) {
    if (peek().kind == Token::punct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view p) {
    const Token& t = peek();
    if (!accept(p)) {
      throw ParseError(t.line, "expected '" + std::string(p) + "', found '" +
                                   (t.kind == Token::end ? std::string("end of input") : t.text) + "'");
    }
  }
  void expect_word(std::string_view w) {
    const Token& t = next();
    if (t.kind != Token::ident || t.text != w) {
      throw ParseError(t.line, "expected '" + std::string(w) + "', found '" + t.text + "'");
    }
  }
  std::string ident(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Token::ident) {
      throw ParseError(t.line, "expected " + std::string(what) + ", found '" +
                                   (t.kind == Token::end ? std::string("end of input") : t.text) + "'");
    }
    ++pos_;
    return t.text;
  }

  SkeletonPtr lookup(const Document& doc, const std::string& name, int line) {
    auto s = doc.skeleton(name);
    if (!s) throw ParseError(line, "unknown skeleton '" + name + "'");
    return s;
  }

  void diagram(Document& doc) {
    expect_word("diagram");
    std::string name = ident("diagram name");
    expect_word("on");
    const int line = peek().line;
    auto sk = lookup(doc, ident("skeleton name"), line);
    expect("{");
    std::vector<LegSpec> legs;
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    bool seen[3] = {false, false, false};
    while (!accept("}")) {
      const Token& head = next();
      int which = head.text == "legs" ? 0 : head.text == "vertices" ? 1 : head.text == "edges" ? 2 : -1;
      if (head.kind != Token::ident || which < 0) {
        throw ParseError(head.line, "expected 'legs', 'vertices' or 'edges', found '" + head.text + "'");
      }
      if (seen[which]) throw ParseError(head.line, "section '" + head.text + "' repeated");
      seen[which] = true;
      expect(":");
      if (accept(";")) continue;
      do {
        if (which == 0) {
          std::string leg = ident("leg token");
          expect("@");
          legs.push_back({leg, ident("component id")});
        } else if (which == 1) {
          VertexSpec v{ident("vertex name"), {}};
          expect("(");
          if (!accept(")")) {
            do {
              v.half_edges.push_back(ident("half-edge token"));
            } while (accept(","));
            expect(")");
          }
          vertices.push_back(std::move(v));
        } else {
          std::string a = ident("half-edge token");
          expect("-");
          edges.push_back({a, ident("half-edge token")});
        }
      } while (accept(","));
      expect(";");
    }
    doc.diagrams.emplace_back(name, build_diagram(sk, legs, vertices, edges));
  }

  void clasper(Document& doc) {
    expect_word("clasper");
    Clasper c;
    c.name = ident("clasper name");
    expect_word("on");
    const int line = peek().line;
    c.skeleton = lookup(doc, ident("skeleton name"), line);
    expect("{");
    while (!accept("}")) {
      const Token& head = next();
      if (head.text == "edge") {
        std::string a = ident("part name");
        expect("-");
        c.edges.push_back({a, ident("part name")});
      } else {
        ClasperPart part;
        if (head.text == "leaf") {
          part.kind = ClasperPartKind::disk_leaf;
        } else if (head.text == "annulus") {
          part.kind = ClasperPartKind::annulus_leaf;
        } else if (head.text == "node") {
          part.kind = ClasperPartKind::node;
        } else if (head.text == "box") {
          part.kind = ClasperPartKind::box;
        } else {
          throw ParseError(head.line, "expected 'leaf', 'annulus', 'node', 'box' or 'edge', found '" +
                                          head.text + "'");
        }
        part.name = ident("part name");
        if (accept("@")) {
          do {
            part.slots.push_back(ident("component id"));
          } while (accept(","));
        }
        c.parts.push_back(std::move(part));
      }
      expect(";");
    }
    doc.claspers.push_back(std::move(c));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SkeletonPtr Document::skeleton(std::string_view name) const {
  for (auto it = skeletons.rbegin(); it != skeletons.rend(); ++it) {
    if ((*it)->name() == name) return *it;
  }
  return nullptr;
}

Document parse_document(std::string_view text) { return Parser(text).document(); }

SkeletonPtr parse_skeleton(std::string_view text) {
  Parser p(text);
  auto s = p.skeleton();
  p.finish();
  return s;
}

std::string to_text(const Skeleton& s) {
  std::string out = "skeleton " + s.name() + " {";
  for (const auto& c : s.components()) {
    out += c.kind == ComponentKind::interval ? " interval " : " circle ";
    out += c.id + ";";
  }
  return out + " }";
}

std::string to_text(const Diagram& d, std::string_view name) {
  std::string out = "diagram " + std::string(name) + " on " + d.skeleton().name() + " { legs:";
  bool first = true;
  for (std::size_t c = 0; c < d.legs().size(); ++c) {
    for (int h : d.legs()[c]) {
      out += first ? " " : ", ";
      out += d.name(h) + "@" + d.skeleton().components()[c].id;
      first = false;
    }
  }
  out += "; vertices:";
  for (int v = 0; v < d.vertex_count(); ++v) {
    const auto& tri = d.vertex(v);
    out += v ? ", " : " ";
    out += d.vertex_name(v) + "(" + d.name(tri[0]) + "," + d.name(tri[1]) + "," + d.name(tri[2]) + ")";
  }
  out += "; edges:";
  first = true;
  for (int h = 0; h < d.half_edge_count(); ++h) {
    if (d.partner(h) < h) continue;
    out += first ? " " : ", ";
    out += d.name(h) + "-" + d.name(d.partner(h));
    first = false;
  }
  return out + "; }";
}

std::string canonical_text(const SkeletonPtr& skeleton, std::string_view digest,
                           std::string_view name) {
  return to_text(diagram_from_digest(skeleton, digest), name);
}

std::string to_text(const Clasper& c) {
  std::string out = "clasper " + c.name + " on " + c.skeleton->name() + " {";
  for (const auto& p : c.parts) {
    switch (p.kind) {
      case ClasperPartKind::disk_leaf: out += " leaf "; break;
      case ClasperPartKind::annulus_leaf: out += " annulus "; break;
      case ClasperPartKind::node: out += " node "; break;
      case ClasperPartKind::box: out += " box "; break;
    }
    out += p.name;
    for (std::size_t i = 0; i < p.slots.size(); ++i) out += (i ? ", " : " @ ") + p.slots[i];
    out += ";";
  }
  for (const auto& e : c.edges) out += " edge " + e.a + "-" + e.b + ";";
  return out + " }";
}

}  // namespace jacobi
