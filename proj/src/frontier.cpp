#include "flexmapf/frontier.hpp"

#include <climits>
#include <tuple>

namespace flexmapf {

bool bounded(int soc, double w, double lb) { return soc <= w * lb + 1e-6; }

bool Frontier::CleanupLess::operator()(const CTNode* a, const CTNode* b) const {
  return std::tie(a->solb, a->soc, a->id) < std::tie(b->solb, b->soc, b->id);
}

bool Frontier::OpenLess::operator()(const CTNode* a, const CTNode* b) const {
  return std::tie(a->f_hat, a->d_hat, a->id) < std::tie(b->f_hat, b->d_hat, b->id);
}

bool Frontier::FocalLess::operator()(const CTNode* a, const CTNode* b) const {
  return std::tie(a->d_hat, a->soc, a->id) < std::tie(b->d_hat, b->soc, b->id);
}

void Frontier::push(CTNode* node) {
  cleanup_.insert(node);
  open_.insert(node);
  if (node->f_hat <= focal_bound_) focal_.insert(node);
  refresh_focal();
}

void Frontier::erase(CTNode* node) {
  cleanup_.erase(node);
  open_.erase(node);
  focal_.erase(node);
  refresh_focal();
}

CTNode* Frontier::select(ListKind* chosen) {
  if (empty()) return nullptr;
  const double lb = lower_bound();
  CTNode* pick = nullptr;
  ListKind kind = ListKind::cleanup;
  if (!focal_.empty() && bounded((*focal_.begin())->soc, w_, lb)) {
    pick = *focal_.begin();
    kind = ListKind::focal;
  } else if (bounded((*open_.begin())->soc, w_, lb)) {
    pick = *open_.begin();
    kind = ListKind::open;
  } else {
    pick = *cleanup_.begin();
  }
  if (chosen) *chosen = kind;
  erase(pick);
  return pick;
}

int Frontier::lower_bound() const { return cleanup_.empty() ? INT_MAX : (*cleanup_.begin())->solb; }

const CTNode* Frontier::min_lb_node() const { return cleanup_.empty() ? nullptr : *cleanup_.begin(); }

void Frontier::refresh_focal() {
  if (open_.empty()) {
    focal_.clear();
    focal_bound_ = -1.0;
    return;
  }
  const double bound = w_ * (*open_.begin())->f_hat;
  if (bound > focal_bound_) {
    for (auto it = open_.upper_bound(focal_bound_); it != open_.end() && (*it)->f_hat <= bound; ++it)
      focal_.insert(*it);
  } else if (bound < focal_bound_) {
    for (auto it = open_.upper_bound(bound); it != open_.end() && (*it)->f_hat <= focal_bound_; ++it)
      focal_.erase(*it);
  }
  focal_bound_ = bound;
}

}  // namespace flexmapf
