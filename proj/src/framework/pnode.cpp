// SPDX-License-Identifier: MIT
// Parallel composition. A left-to-right order of the children is described by
// its elements: runs of identical thin shapes and single non-thin children.
// Summing the face conditions over the order shows that the non-thin children
// and the faces whose two pole labels are not both -1 have total weight
// 2 - a_u - a_v <= 4 (a_w the outer labels), so every order is a short
// sequence of such events separated by thin runs. The search enumerates these
// sequences left to right and assigns children to them by bipartite matching.
#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pole_tally.hpp"
#include "upt/framework.hpp"

namespace upt {

using detail::gap_labels;
using detail::needs_nonswitch;
using detail::PoleTally;
using detail::rho_left;
using detail::rho_right;

namespace {

constexpr int kBudget = 4;

struct Slot {
  Shape shape;
  bool run = false;
};

class ParallelSearch {
public:
  ParallelSearch(const std::vector<PChild>& children, PoleKinds poles)
      : children_(children), poles_(poles) {
    for (const PChild& c : children_)
      for (const Shape& s : c.set->shapes()) pool_[s.tl].insert(s);
  }

  void all(TauRange r, FeasibleSet& out) {
    range_ = r;
    out_ = &out;
    start();
  }

  std::optional<PArrangement> realize(const Shape& target) {
    target_ = target;
    start();
    return found_;
  }

private:
  bool compatible(int c, const Shape& s) const {
    const PChild& ch = children_[c];
    if (!ch.set->contains(s)) return false;
    if (needs_nonswitch(s, 0, poles_.u_switch) && ch.u_switch) return false;
    if (needs_nonswitch(s, 1, poles_.v_switch) && ch.v_switch) return false;
    return true;
  }

  void start() {
    const int k = static_cast<int>(children_.size());
    if (k == 0) return;
    for (const PChild& c : children_)
      if (c.set->empty()) return;
    for (const auto& [tl, shapes] : pool_) {
      if (target_ && tl != target_->tl) continue;
      for (const Shape& s : shapes) {
        if (target_ && (s.rlu != target_->rlu || s.rlv != target_->rlv)) continue;
        PoleTally t(poles_);
        if (!t.add_component(s)) continue;
        int h = s.h();
        if (h > kBudget) continue;
        slots_.push_back({s, h == 0});
        extend(t, h);
        slots_.pop_back();
        if (found_) return;
      }
    }
  }

  void extend(const PoleTally& t, int spent) {
    if (found_) return;
    close(t, spent);
    const int k = static_cast<int>(children_.size());
    if (static_cast<int>(slots_.size()) >= k) return;
    const Slot prev = slots_.back();
    const Shape a = prev.shape;
    for (int sum = -2; sum <= 2; ++sum) {
      int cost = 2 + sum;
      if (spent + cost > kBudget) break;
      auto it = pool_.find(-2 - sum - a.tr);
      if (it == pool_.end()) continue;
      for (const Shape& b : it->second) {
        int h = b.h();
        if (spent + cost + h > kBudget) continue;
        bool run = h == 0;
        if (run && prev.run && cost == 0 && b == a) continue;
        for (int au : gap_labels(rho_right(a, 0), rho_left(b, 0)))
          for (int av : gap_labels(rho_right(a, 1), rho_left(b, 1))) {
            if (au + av != sum) continue;
            PoleTally n = t;
            n.add_label(0, au);
            n.add_label(1, av);
            if (!n.add_component(b)) continue;
            slots_.push_back({b, run});
            extend(n, spent + cost + h);
            slots_.pop_back();
            if (found_) return;
          }
      }
    }
  }

  void close(const PoleTally& t, int spent) {
    const Shape& f = slots_.front().shape;
    const Shape& l = slots_.back().shape;
    for (int au : gap_labels(rho_right(l, 0), rho_left(f, 0)))
      for (int av : gap_labels(rho_right(l, 1), rho_left(f, 1))) {
        if (spent != 2 - au - av) continue;
        PoleTally n = t;
        n.add_label(0, au);
        n.add_label(1, av);
        if (!n.complete()) continue;
        Shape s{f.tl, l.tr, au, av, f.rlu, l.rru, f.rlv, l.rrv};
        if (!is_coherent(s)) continue;
        if (target_) {
          if (s != *target_) continue;
          auto members = assign();
          if (!members) continue;
          PArrangement arr;
          for (const Slot& x : slots_)
            arr.sequence.elements.push_back(
                {x.shape, x.run ? ShapeSequence::Mark::Plus : ShapeSequence::Mark::One});
          arr.members = std::move(*members);
          found_ = std::move(arr);
          return;
        }
        if (!range_.admits(s) || out_->contains(s)) continue;
        if (assign()) out_->insert(s);
      }
  }

  // Children per slot: every slot gets one child, every child a slot, and
  // only runs take more than one child.
  std::optional<std::vector<std::vector<int>>> assign() const {
    const int k = static_cast<int>(children_.size());
    const int m = static_cast<int>(slots_.size());
    std::vector<std::vector<int>> adj(m);  // slot -> children
    std::vector<std::vector<int>> radj(k);
    std::vector<int> run_home(k, -1);
    for (int s = 0; s < m; ++s)
      for (int c = 0; c < k; ++c)
        if (compatible(c, slots_[s].shape)) {
          adj[s].push_back(c);
          radj[c].push_back(s);
          if (slots_[s].run && run_home[c] < 0) run_home[c] = s;
        }
    std::vector<int> slot_of(k, -1), child_of(m, -1);
    // Saturate the slots.
    for (int s = 0; s < m; ++s) {
      std::vector<char> seen(k, 0);
      std::function<bool(int)> aug = [&](int x) {
        for (int c : adj[x]) {
          if (seen[c]) continue;
          seen[c] = 1;
          if (slot_of[c] < 0 || aug(slot_of[c])) {
            slot_of[c] = x;
            child_of[x] = c;
            return true;
          }
        }
        return false;
      };
      if (!aug(s)) return std::nullopt;
    }
    // Cover children that fit no run by shifting along alternating paths that
    // end at a child which can fall back to a run.
    for (int x = 0; x < k; ++x) {
      if (slot_of[x] >= 0 || run_home[x] >= 0) continue;
      std::vector<int> via(k, -1), par(k, -1);
      std::vector<char> seen(k, 0);
      std::vector<int> queue{x};
      seen[x] = 1;
      int end = -1;
      for (size_t i = 0; i < queue.size() && end < 0; ++i)
        for (int s : radj[queue[i]]) {
          int c = child_of[s];
          if (seen[c]) continue;
          seen[c] = 1;
          via[c] = s;
          par[c] = queue[i];
          if (run_home[c] >= 0) {
            end = c;
            break;
          }
          queue.push_back(c);
        }
      if (end < 0) return std::nullopt;
      slot_of[end] = -1;
      for (int c = end; c != x; c = par[c]) {
        child_of[via[c]] = par[c];
        slot_of[par[c]] = via[c];
      }
    }
    std::vector<std::vector<int>> members(m);
    for (int c = 0; c < k; ++c)
      members[slot_of[c] >= 0 ? slot_of[c] : run_home[c]].push_back(c);
    return members;
  }

  const std::vector<PChild>& children_;
  PoleKinds poles_;
  std::map<int, std::set<Shape>> pool_;
  std::vector<Slot> slots_;
  TauRange range_;
  FeasibleSet* out_ = nullptr;
  std::optional<Shape> target_;
  std::optional<PArrangement> found_;
};

}  // namespace

FeasibleSet p_node_feasible(const std::vector<PChild>& children, PoleKinds poles, TauRange r) {
  FeasibleSet out = r.empty_set();
  if (children.size() < 2) throw std::invalid_argument("parallel composition needs two children");
  ParallelSearch(children, poles).all(r, out);
  return out;
}

std::optional<PArrangement> p_node_realize(const std::vector<PChild>& children, PoleKinds poles,
                                           const Shape& target) {
  return ParallelSearch(children, poles).realize(target);
}

FeasibleSet root_feasible(const Digraph& g, const SpqrTree& t, const FeasibleSet& child,
                          const NodeInfo& child_info, TauRange r) {
  const SpqrNode& root = t.node(t.root);
  FeasibleSet edge = q_node_feasible(g.edge(root.edge), root.u, root.v, r);
  std::vector<PChild> cs{{&child, child_info.u_switch, child_info.v_switch}, {&edge, true, true}};
  return p_node_feasible(cs, {g.is_switch(root.u), g.is_switch(root.v)}, r);
}

}  // namespace upt
