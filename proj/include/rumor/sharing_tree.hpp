#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rumor/error.hpp"

namespace rumor {

enum class Category { kScience, kConspiracy, kTroll, kSynthetic };

std::string_view to_string(Category c);
Category category_from_string(std::string_view name);

// Sign of the publishing page used on the first edge of a path when the
// tree hangs off a virtual page root: science pages -1, everything else +1
// (polarization measures conspiracy-likeness).
int default_page_sign(Category c);

struct TreeNode {
  std::int64_t id = 0;
  std::int64_t user = 0;
  double sigma = 0.0;  // polarization in [-1, 1]
  double t = 0.0;      // hours for observed data, rounds for simulated trees
  std::optional<std::int64_t> parent;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// A real root is the single node without a parent. A virtual root stands for
// the publishing page: every parentless node is a first sharer attached to it,
// and the page itself is not a node.
struct TreeRoot {
  bool is_virtual = true;
  int page_sign = 1;

  friend bool operator==(const TreeRoot&, const TreeRoot&) = default;
};

struct SharingTree {
  std::int64_t news_id = 0;
  Category category = Category::kSynthetic;
  TreeRoot root;
  std::vector<TreeNode> nodes;

  friend bool operator==(const SharingTree&, const SharingTree&) = default;
};

struct UserProfile {
  std::int64_t user_id = 0;
  std::int64_t likes_conspiracy = 0;
  std::int64_t likes_science = 0;
};

class UndefinedPolarizationError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Fraction of the user's likes that went to conspiracy content.
double conspiracy_fraction(const UserProfile& profile);
// 2 * fraction - 1.
double user_polarization(const UserProfile& profile);

inline double edge_homogeneity(double sigma_i, double sigma_j) { return sigma_i * sigma_j; }
// Strictly positive homogeneity only; zero counts as non-homogeneous.
inline bool is_homogeneous(double sigma_ij) { return sigma_ij > 0.0; }

class TreeValidationError : public std::runtime_error {
 public:
  enum class Kind {
    kMalformed,
    kDuplicateId,
    kOrphanParent,
    kCycle,
    kSigmaRange,
    kRootCount,
    kTimeOrder,
  };

  TreeValidationError(Kind kind, std::int64_t news_id, std::optional<std::int64_t> node,
                      const std::string& what);

  Kind kind() const { return kind_; }
  std::int64_t news_id() const { return news_id_; }
  std::optional<std::int64_t> node() const { return node_; }

 private:
  Kind kind_;
  std::int64_t news_id_;
  std::optional<std::int64_t> node_;
};

// Checks the structural invariants; throws TreeValidationError naming the
// first offending node.
void validate(const SharingTree& tree);

nlohmann::json to_json(const SharingTree& tree);
nlohmann::json to_json(std::span<const SharingTree> trees);

// Both parse and validate.
SharingTree tree_from_json(const nlohmann::json& doc);
std::vector<SharingTree> trees_from_json(const nlohmann::json& doc);

}  // namespace rumor
