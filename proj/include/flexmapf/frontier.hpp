#pragma once

#include <set>

#include "flexmapf/ct_node.hpp"

namespace flexmapf {

enum class ListKind { focal, open, cleanup };

/// Open CT nodes under the three EES orderings:
///  - CLEANUP by SOLB (ties: smaller SOC, older node),
///  - OPEN by f_hat,
///  - FOCAL, the OPEN nodes with f_hat <= w * min f_hat, by d_hat.
class Frontier {
 public:
  explicit Frontier(double w) : w_(w) {}

  void push(CTNode* node);
  /// Focal top if globally bounded, else open top if globally bounded, else
  /// the cleanup top. The node is removed from every ordering.
  CTNode* select(ListKind* chosen = nullptr);
  /// Removes `node` if present.
  void erase(CTNode* node);

  bool empty() const { return cleanup_.empty(); }
  std::size_t size() const { return cleanup_.size(); }
  /// Minimum SOLB over open nodes.
  int lower_bound() const;
  /// Node attaining lower_bound(); nullptr when empty.
  const CTNode* min_lb_node() const;

  const CTNode* focal_top() const { return focal_.empty() ? nullptr : *focal_.begin(); }
  const CTNode* open_top() const { return open_.empty() ? nullptr : *open_.begin(); }
  std::size_t focal_size() const { return focal_.size(); }

 private:
  struct CleanupLess {
    bool operator()(const CTNode* a, const CTNode* b) const;
  };
  struct OpenLess {
    using is_transparent = void;
    bool operator()(const CTNode* a, const CTNode* b) const;
    bool operator()(const CTNode* a, double f) const { return a->f_hat < f; }
    bool operator()(double f, const CTNode* b) const { return f < b->f_hat; }
  };
  struct FocalLess {
    bool operator()(const CTNode* a, const CTNode* b) const;
  };

  void refresh_focal();

  double w_;
  double focal_bound_ = -1.0;
  std::set<CTNode*, CleanupLess> cleanup_;
  std::set<CTNode*, OpenLess> open_;
  std::set<CTNode*, FocalLess> focal_;
};

/// C <= w * lb, with a small tolerance for rounding in w * lb.
bool bounded(int soc, double w, double lb);

}  // namespace flexmapf
