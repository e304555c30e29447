#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catalania/counting.hpp"

namespace catalania {

/// Ordered rooted tree. A vertex without children is a leaf; a single-vertex
/// tree is a leaf.
struct Tree {
  std::vector<Tree> children;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const Tree&, const Tree&) = default;
};

/// Ordered sequence of trees. May be empty (zero components).
struct Forest {
  std::vector<Tree> trees;

  std::size_t components() const { return trees.size(); }

  friend bool operator==(const Forest&, const Forest&) = default;
};

/// Component index plus child indices from that component's root.
struct VertexAddr {
  std::size_t component = 0;
  std::vector<std::size_t> path;

  std::size_t depth() const { return path.size(); }

  friend auto operator<=>(const VertexAddr&, const VertexAddr&) = default;
  friend bool operator==(const VertexAddr&, const VertexAddr&) = default;
};

/// Throws std::out_of_range if the address does not name a vertex.
const Tree& vertex_at(const Forest& f, const VertexAddr& addr);
Tree& vertex_at(Forest& f, const VertexAddr& addr);

/// Vertices grouped by depth. Roots of all components sit at depth 0; each
/// level lists vertices left to right, components in order.
std::vector<std::vector<VertexAddr>> levels(const Forest& f);

/// Leaves in preorder (components in order).
std::vector<VertexAddr> leaves_preorder(const Forest& f);

std::size_t count_leaves(const Forest& f);
std::size_t count_internal(const Forest& f);

/// Outdegree sequence of a forest in preorder, components concatenated.
/// Generators stream these so counting never materializes trees.
using CodeVisitor = std::function<void(std::span<const std::size_t>)>;

/// Streams every ordered forest of `gamma` beta-ary trees with `n` internal
/// vertices. Order: compositions of the vertex budget over components (and
/// over a vertex's subtrees) in lexicographic order, earlier subtrees
/// varying slowest. Throws std::invalid_argument for beta = 0.
void visit_kary_forests(std::size_t beta, std::size_t n, std::size_t gamma,
                        const CodeVisitor& visit);

/// Streams every ordered forest with `gamma` components and exactly
/// profile.counts()[j] internal vertices of outdegree profile.outdegrees()[j].
/// A root's class is tried in ascending class order; budgets are distributed
/// as in visit_kary_forests.
void visit_mixed_forests(const VecProfile& profile, std::size_t gamma, const CodeVisitor& visit);

/// Rebuilds a forest from its preorder outdegree sequence. Throws
/// std::invalid_argument if the sequence ends inside a tree.
Forest forest_from_code(std::span<const std::size_t> code);

std::vector<Tree> generate_kary(std::size_t beta, std::size_t n);
std::vector<Forest> generate_forests(std::size_t beta, std::size_t n, std::size_t gamma);
std::vector<Forest> generate_mixed_forests(const VecProfile& profile, std::size_t gamma);

/// Parenthesis encoding:
///   forest := tree (";" tree)* | ""
///   tree   := "o" | "(" tree+ ")"
std::string encode(const Tree& t);
std::string encode(const Forest& f);

class DecodeError : public std::invalid_argument {
public:
  DecodeError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Inverse of encode. Throws DecodeError carrying the offset of the first
/// offending character.
Forest decode(std::string_view text);

namespace detail {

/// Text appended after a leaf's "o".
using LeafSuffix = std::function<std::string(const VertexAddr&)>;

/// Called after each "o" with the unparsed remainder and its absolute
/// position; returns how many characters of leaf annotation it consumed.
using LeafAnnotationParser =
    std::function<std::size_t(std::string_view, std::size_t, const VertexAddr&)>;

std::string encode_annotated(const Forest& f, const LeafSuffix& suffix);

/// `base_offset` is added to every reported error position.
Forest decode_annotated(std::string_view text, std::size_t base_offset,
                        const LeafAnnotationParser& annotation);

}  // namespace detail

}  // namespace catalania
