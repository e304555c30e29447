#include "catalania/forest.hpp"

#include <algorithm>
#include <utility>

namespace catalania {

namespace {

using Continuation = std::function<void()>;

// Calls fn with every composition of `total` into `parts` non-negative parts,
// lexicographically (first part ascending).
void for_each_composition(std::size_t total, std::size_t parts,
                          const std::function<void(std::span<const std::size_t>)>& fn) {
  if (parts == 0) {
    if (total == 0) fn({});
    return;
  }
  std::vector<std::size_t> buf(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      buf[i] = left;
      fn(buf);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      buf[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
}

using CountVec = std::vector<std::size_t>;

// Vector analogue: every way to write `total` as an ordered sum of `parts`
// count vectors. The first part varies slowest, and within a part the first
// coordinate varies slowest.
void for_each_vector_composition(const CountVec& total, std::size_t parts,
                                 const std::function<void(std::span<const CountVec>)>& fn) {
  const bool zero = std::all_of(total.begin(), total.end(), [](std::size_t c) { return c == 0; });
  if (parts == 0) {
    if (zero) fn({});
    return;
  }
  std::vector<CountVec> buf(parts, CountVec(total.size(), 0));
  std::function<void(std::size_t, const CountVec&)> rec = [&](std::size_t i, const CountVec& left) {
    if (i + 1 == parts) {
      buf[i] = left;
      fn(buf);
      return;
    }
    std::function<void(std::size_t)> choose = [&](std::size_t coord) {
      if (coord == left.size()) {
        CountVec rest(left.size());
        for (std::size_t c = 0; c < left.size(); ++c) rest[c] = left[c] - buf[i][c];
        rec(i + 1, rest);
        return;
      }
      for (std::size_t v = 0; v <= left[coord]; ++v) {
        buf[i][coord] = v;
        choose(coord + 1);
      }
    };
    choose(0);
  };
  rec(0, total);
}

class KaryEmitter {
public:
  KaryEmitter(std::size_t beta, const CodeVisitor& visit) : beta_(beta), visit_(visit) {}

  void forest(std::size_t n, std::size_t gamma) {
    for_each_composition(n, gamma, [&](std::span<const std::size_t> parts) {
      sequence(parts, 0, [&] { visit_(code_); });
    });
  }

private:
  void tree(std::size_t n, const Continuation& k) {
    if (n == 0) {
      code_.push_back(0);
      k();
      code_.pop_back();
      return;
    }
    code_.push_back(beta_);
    for_each_composition(n - 1, beta_, [&](std::span<const std::size_t> parts) {
      sequence(parts, 0, k);
    });
    code_.pop_back();
  }

  void sequence(std::span<const std::size_t> parts, std::size_t i, const Continuation& k) {
    if (i == parts.size()) {
      k();
      return;
    }
    tree(parts[i], [&] { sequence(parts, i + 1, k); });
  }

  std::size_t beta_;
  const CodeVisitor& visit_;
  std::vector<std::size_t> code_;
};

class MixedEmitter {
public:
  MixedEmitter(const VecProfile& profile, const CodeVisitor& visit)
      : outdegrees_(profile.outdegrees()), visit_(visit) {}

  void forest(const CountVec& counts, std::size_t gamma) {
    for_each_vector_composition(counts, gamma, [&](std::span<const CountVec> parts) {
      sequence(parts, 0, [&] { visit_(code_); });
    });
  }

private:
  void tree(const CountVec& counts, const Continuation& k) {
    bool any = false;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] == 0) continue;
      any = true;
      CountVec rest = counts;
      --rest[j];
      code_.push_back(outdegrees_[j]);
      for_each_vector_composition(rest, outdegrees_[j], [&](std::span<const CountVec> parts) {
        sequence(parts, 0, k);
      });
      code_.pop_back();
    }
    if (!any) {
      code_.push_back(0);
      k();
      code_.pop_back();
    }
  }

  void sequence(std::span<const CountVec> parts, std::size_t i, const Continuation& k) {
    if (i == parts.size()) {
      k();
      return;
    }
    tree(parts[i], [&] { sequence(parts, i + 1, k); });
  }

  std::vector<std::size_t> outdegrees_;
  const CodeVisitor& visit_;
  std::vector<std::size_t> code_;
};

Tree tree_from_code(std::span<const std::size_t> code, std::size_t& pos) {
  if (pos >= code.size()) throw std::invalid_argument("outdegree sequence ends inside a tree");
  const std::size_t degree = code[pos++];
  Tree t;
  t.children.reserve(degree);
  for (std::size_t c = 0; c < degree; ++c) t.children.push_back(tree_from_code(code, pos));
  return t;
}

void collect_leaves(const Tree& t, VertexAddr& addr, std::vector<VertexAddr>& out) {
  if (t.is_leaf()) {
    out.push_back(addr);
    return;
  }
  for (std::size_t c = 0; c < t.children.size(); ++c) {
    addr.path.push_back(c);
    collect_leaves(t.children[c], addr, out);
    addr.path.pop_back();
  }
}

std::size_t count_vertices_if(const Tree& t, bool leaves) {
  std::size_t own = (t.is_leaf() == leaves) ? 1 : 0;
  for (const Tree& c : t.children) own += count_vertices_if(c, leaves);
  return own;
}

void encode_tree(const Tree& t, VertexAddr& addr, const detail::LeafSuffix& suffix,
                 std::string& out) {
  if (t.is_leaf()) {
    out += 'o';
    if (suffix) out += suffix(addr);
    return;
  }
  out += '(';
  for (std::size_t c = 0; c < t.children.size(); ++c) {
    addr.path.push_back(c);
    encode_tree(t.children[c], addr, suffix, out);
    addr.path.pop_back();
  }
  out += ')';
}

class Parser {
public:
  Parser(std::string_view text, std::size_t base, const detail::LeafAnnotationParser& annotation)
      : text_(text), base_(base), annotation_(annotation) {}

  Forest parse() {
    Forest f;
    if (text_.empty()) return f;
    VertexAddr addr;
    while (true) {
      addr.component = f.trees.size();
      f.trees.push_back(tree(addr));
      if (pos_ == text_.size()) break;
      if (text_[pos_] != ';') fail("expected ';' or end of input");
      ++pos_;
    }
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DecodeError(msg + " at position " + std::to_string(base_ + pos_), base_ + pos_);
  }

  Tree tree(VertexAddr& addr) {
    if (pos_ >= text_.size()) fail("expected 'o' or '('");
    const char c = text_[pos_];
    if (c == 'o') {
      ++pos_;
      if (annotation_) pos_ += annotation_(text_.substr(pos_), base_ + pos_, addr);
      return Tree{};
    }
    if (c != '(') fail("expected 'o' or '('");
    ++pos_;
    Tree t;
    while (pos_ < text_.size() && text_[pos_] != ')') {
      addr.path.push_back(t.children.size());
      t.children.push_back(tree(addr));
      addr.path.pop_back();
    }
    if (pos_ >= text_.size()) fail("unterminated '('");
    if (t.children.empty()) fail("internal vertex without children");
    ++pos_;
    return t;
  }

  std::string_view text_;
  std::size_t base_;
  const detail::LeafAnnotationParser& annotation_;
  std::size_t pos_ = 0;
};

}  // namespace

const Tree& vertex_at(const Forest& f, const VertexAddr& addr) {
  if (addr.component >= f.trees.size()) throw std::out_of_range("no such component");
  const Tree* t = &f.trees[addr.component];
  for (std::size_t idx : addr.path) {
    if (idx >= t->children.size()) throw std::out_of_range("no such vertex");
    t = &t->children[idx];
  }
  return *t;
}

Tree& vertex_at(Forest& f, const VertexAddr& addr) {
  return const_cast<Tree&>(vertex_at(std::as_const(f), addr));
}

std::vector<std::vector<VertexAddr>> levels(const Forest& f) {
  std::vector<std::vector<VertexAddr>> out;
  std::vector<std::pair<VertexAddr, const Tree*>> current;
  for (std::size_t c = 0; c < f.trees.size(); ++c) current.push_back({VertexAddr{c, {}}, &f.trees[c]});
  while (!current.empty()) {
    std::vector<std::pair<VertexAddr, const Tree*>> next;
    auto& level = out.emplace_back();
    for (const auto& [addr, node] : current) {
      level.push_back(addr);
      for (std::size_t i = 0; i < node->children.size(); ++i) {
        VertexAddr child = addr;
        child.path.push_back(i);
        next.push_back({std::move(child), &node->children[i]});
      }
    }
    current = std::move(next);
  }
  return out;
}

std::vector<VertexAddr> leaves_preorder(const Forest& f) {
  std::vector<VertexAddr> out;
  for (std::size_t c = 0; c < f.trees.size(); ++c) {
    VertexAddr addr{c, {}};
    collect_leaves(f.trees[c], addr, out);
  }
  return out;
}

std::size_t count_leaves(const Forest& f) {
  std::size_t n = 0;
  for (const Tree& t : f.trees) n += count_vertices_if(t, true);
  return n;
}

std::size_t count_internal(const Forest& f) {
  std::size_t n = 0;
  for (const Tree& t : f.trees) n += count_vertices_if(t, false);
  return n;
}

void visit_kary_forests(std::size_t beta, std::size_t n, std::size_t gamma,
                        const CodeVisitor& visit) {
  if (beta == 0) throw std::invalid_argument("beta must be >= 1");
  KaryEmitter(beta, visit).forest(n, gamma);
}

void visit_mixed_forests(const VecProfile& profile, std::size_t gamma, const CodeVisitor& visit) {
  MixedEmitter(profile, visit).forest(profile.counts(), gamma);
}

Forest forest_from_code(std::span<const std::size_t> code) {
  Forest f;
  std::size_t pos = 0;
  while (pos < code.size()) f.trees.push_back(tree_from_code(code, pos));
  return f;
}

std::vector<Tree> generate_kary(std::size_t beta, std::size_t n) {
  std::vector<Tree> out;
  visit_kary_forests(beta, n, 1, [&](std::span<const std::size_t> code) {
    out.push_back(std::move(forest_from_code(code).trees.front()));
  });
  return out;
}

std::vector<Forest> generate_forests(std::size_t beta, std::size_t n, std::size_t gamma) {
  std::vector<Forest> out;
  visit_kary_forests(beta, n, gamma,
                     [&](std::span<const std::size_t> code) { out.push_back(forest_from_code(code)); });
  return out;
}

std::vector<Forest> generate_mixed_forests(const VecProfile& profile, std::size_t gamma) {
  std::vector<Forest> out;
  visit_mixed_forests(profile, gamma,
                      [&](std::span<const std::size_t> code) { out.push_back(forest_from_code(code)); });
  return out;
}

std::string encode(const Tree& t) {
  std::string out;
  VertexAddr addr;
  encode_tree(t, addr, nullptr, out);
  return out;
}

std::string encode(const Forest& f) { return detail::encode_annotated(f, nullptr); }

DecodeError::DecodeError(const std::string& what, std::size_t position)
    : std::invalid_argument(what), position_(position) {}

Forest decode(std::string_view text) { return detail::decode_annotated(text, 0, nullptr); }

namespace detail {

std::string encode_annotated(const Forest& f, const LeafSuffix& suffix) {
  std::string out;
  for (std::size_t c = 0; c < f.trees.size(); ++c) {
    if (c > 0) out += ';';
    VertexAddr addr{c, {}};
    encode_tree(f.trees[c], addr, suffix, out);
  }
  return out;
}

Forest decode_annotated(std::string_view text, std::size_t base_offset,
                        const LeafAnnotationParser& annotation) {
  return Parser(text, base_offset, annotation).parse();
}

}  // namespace detail

}  // namespace catalania
