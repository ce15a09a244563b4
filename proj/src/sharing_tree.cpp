#include "rumor/sharing_tree.hpp"

#include <cmath>
#include <unordered_map>

namespace rumor {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kScience:
      return "science";
    case Category::kConspiracy:
      return "conspiracy";
    case Category::kTroll:
      return "troll";
    case Category::kSynthetic:
      return "synthetic";
  }
  return "synthetic";
}

Category category_from_string(std::string_view name) {
  if (name == "science") return Category::kScience;
  if (name == "conspiracy") return Category::kConspiracy;
  if (name == "troll") return Category::kTroll;
  if (name == "synthetic") return Category::kSynthetic;
  throw ParameterError("unknown category '" + std::string(name) + "'");
}

int default_page_sign(Category c) { return c == Category::kScience ? -1 : 1; }

double conspiracy_fraction(const UserProfile& profile) {
  if (profile.likes_conspiracy < 0 || profile.likes_science < 0)
    throw ParameterError("like counts must be non-negative");
  const auto total = profile.likes_conspiracy + profile.likes_science;
  if (total == 0)
    throw UndefinedPolarizationError("user " + std::to_string(profile.user_id) +
                                     " has no likes; polarization undefined");
  return static_cast<double>(profile.likes_conspiracy) / static_cast<double>(total);
}

double user_polarization(const UserProfile& profile) {
  return 2.0 * conspiracy_fraction(profile) - 1.0;
}

TreeValidationError::TreeValidationError(Kind kind, std::int64_t news_id,
                                         std::optional<std::int64_t> node,
                                         const std::string& what)
    : std::runtime_error("tree " + std::to_string(news_id) +
                         (node ? ", node " + std::to_string(*node) : std::string()) + ": " +
                         what),
      kind_(kind),
      news_id_(news_id),
      node_(node) {}

void validate(const SharingTree& tree) {
  using Kind = TreeValidationError::Kind;
  auto fail = [&](Kind k, std::optional<std::int64_t> node, const std::string& what) {
    throw TreeValidationError(k, tree.news_id, node, what);
  };
  if (tree.root.page_sign != 1 && tree.root.page_sign != -1)
    fail(Kind::kMalformed, std::nullopt, "page_sign must be +1 or -1");

  std::unordered_map<std::int64_t, std::size_t> index;
  index.reserve(tree.nodes.size());
  std::size_t roots = 0;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& node = tree.nodes[i];
    if (!index.emplace(node.id, i).second) fail(Kind::kDuplicateId, node.id, "duplicate node id");
    if (!(node.sigma >= -1.0 && node.sigma <= 1.0))
      fail(Kind::kSigmaRange, node.id, "polarization outside [-1,1]");
    if (!std::isfinite(node.t)) fail(Kind::kMalformed, node.id, "non-finite timestamp");
    if (!node.parent) ++roots;
  }
  if (!tree.root.is_virtual && roots != 1)
    fail(Kind::kRootCount, std::nullopt,
         "a real-root tree needs exactly one parentless node, found " + std::to_string(roots));
  if (tree.root.is_virtual && roots == 0 && !tree.nodes.empty())
    fail(Kind::kRootCount, std::nullopt, "no first sharer under the virtual root");

  for (const TreeNode& node : tree.nodes) {
    if (!node.parent) continue;
    const auto it = index.find(*node.parent);
    if (it == index.end())
      fail(Kind::kOrphanParent, node.id,
           "parent " + std::to_string(*node.parent) + " does not exist");
    if (tree.nodes[it->second].t > node.t)
      fail(Kind::kTimeOrder, node.id, "timestamp precedes its parent's");
  }

  // 0 = unvisited, 1 = on the current parent chain, 2 = reaches a root.
  std::vector<char> state(tree.nodes.size(), 0);
  std::vector<std::size_t> chain;
  for (std::size_t start = 0; start < tree.nodes.size(); ++start) {
    std::size_t cur = start;
    chain.clear();
    while (state[cur] == 0) {
      state[cur] = 1;
      chain.push_back(cur);
      const auto& parent = tree.nodes[cur].parent;
      if (!parent) break;
      cur = index.at(*parent);
    }
    if (state[cur] == 1 && tree.nodes[cur].parent)
      fail(Kind::kCycle, tree.nodes[cur].id, "parent links form a cycle");
    for (std::size_t k : chain) state[k] = 2;
  }
}

nlohmann::json to_json(const SharingTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& n : tree.nodes) {
    nodes.push_back({{"id", n.id},
                     {"user", n.user},
                     {"sigma", n.sigma},
                     {"t", n.t},
                     {"parent", n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr)}});
  }
  return {{"news_id", tree.news_id},
          {"category", std::string(to_string(tree.category))},
          {"root", {{"virtual", tree.root.is_virtual}, {"page_sign", tree.root.page_sign}}},
          {"nodes", std::move(nodes)}};
}

nlohmann::json to_json(std::span<const SharingTree> trees) {
  nlohmann::json out = nlohmann::json::array();
  for (const SharingTree& t : trees) out.push_back(to_json(t));
  return out;
}

SharingTree tree_from_json(const nlohmann::json& doc) {
  SharingTree tree;
  try {
    tree.news_id = doc.at("news_id").get<std::int64_t>();
    tree.category = category_from_string(doc.at("category").get<std::string>());
    const auto& root = doc.at("root");
    tree.root.is_virtual = root.at("virtual").get<bool>();
    tree.root.page_sign =
        root.contains("page_sign") ? root.at("page_sign").get<int>() : default_page_sign(tree.category);
    for (const auto& n : doc.at("nodes")) {
      TreeNode node;
      node.id = n.at("id").get<std::int64_t>();
      node.user = n.at("user").get<std::int64_t>();
      node.sigma = n.at("sigma").get<double>();
      node.t = n.at("t").get<double>();
      const auto& parent = n.at("parent");
      if (!parent.is_null()) node.parent = parent.get<std::int64_t>();
      tree.nodes.push_back(node);
    }
  } catch (const nlohmann::json::exception& ex) {
    const auto id = doc.is_object() && doc.contains("news_id") && doc["news_id"].is_number_integer()
                        ? doc["news_id"].get<std::int64_t>()
                        : -1;
    throw TreeValidationError(TreeValidationError::Kind::kMalformed, id, std::nullopt,
                              std::string("schema violation: ") + ex.what());
  } catch (const ParameterError& ex) {
    throw TreeValidationError(TreeValidationError::Kind::kMalformed, tree.news_id, std::nullopt,
                              ex.what());
  }
  validate(tree);
  return tree;
}

std::vector<SharingTree> trees_from_json(const nlohmann::json& doc) {
  if (!doc.is_array())
    throw TreeValidationError(TreeValidationError::Kind::kMalformed, -1, std::nullopt,
                              "tree batch must be a JSON array");
  std::vector<SharingTree> out;
  out.reserve(doc.size());
  for (const auto& item : doc) out.push_back(tree_from_json(item));
  return out;
}

}  // namespace rumor
