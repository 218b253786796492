// SPDX-License-Identifier: MIT
#include <ostream>

#include "config.hpp"
#include "upt/rnode_flow.hpp"

namespace upt {

using detail::entering_rho;
using detail::lambda_end;
using detail::leaving_rho;
using Role = RNodeView::Role;

namespace {

class SourcesSearch {
public:
  SourcesSearch(const RNodeContext& ctx, std::ostream* trace) : ctx_(ctx), trace_(trace) {}

  FeasibleSet all() {
    FeasibleSet out = ctx_.range.empty_set();
    out_ = &out;
    run();
    return out;
  }

  std::optional<std::vector<Shape>> realize(const Shape& target) {
    target_ = target;
    run();
    return found_;
  }

private:
  void run() {
    for (int flip = 0; flip < 2 && !found_; ++flip) {
      view_ = make_view(ctx_, flip);
      const int m = view_.emb.m(), n = view_.emb.n;
      order_.clear();
      for (int e : component_order(view_.classes))
        if (view_.enumerated(e)) order_.push_back(e);
      for (int e = 0; e < m; ++e)
        if (e != view_.parent && view_.sets[e].empty()) return;
      // Internal large angles of the settled components.
      large_.assign(n, 0);
      for (int e = 0; e < m; ++e) {
        const Role r = view_.roles[e];
        if (r == Role::Parent || r == Role::Enumerated || r == Role::HeartPair) continue;
        for (int end = 0; end < 2; ++end) note(e, end, view_.options[e][0], 1);
      }
      if (bad_ > 0) {
        bad_ = 0;
        continue;
      }
      chosen_.assign(m, std::nullopt);
      dfs(0);
    }
  }

  int vertex(int e, int end) const {
    return end == 0 ? view_.emb.ends[e].first : view_.emb.ends[e].second;
  }

  // Tracks internal large angles per switch vertex; bad_ counts violations.
  void note(int e, int end, const Shape& s, int sign) {
    const int w = vertex(e, end);
    if (lambda_end(s, end) != -1) return;
    if (view_.is_switch[w]) {
      const int before = large_[w];
      large_[w] += sign;
      if (sign > 0 && before >= 1) ++bad_;
      if (sign < 0 && large_[w] >= 1) --bad_;
    } else if (view_.child_switch[e][end]) {
      bad_ += sign;
    }
  }

  void dfs(size_t i) {
    if (found_) return;
    if (i == order_.size()) {
      candidates();
      return;
    }
    const int e = order_[i];
    for (const Shape& s : view_.sets[e].shapes()) {
      note(e, 0, s, 1);
      note(e, 1, s, 1);
      if (bad_ == 0) {
        chosen_[e] = s;
        dfs(i + 1);
      }
      note(e, 0, s, -1);
      note(e, 1, s, -1);
      if (found_) return;
    }
  }

  void candidates() {
    const PlanarEmbedding& emb = view_.emb;
    const int p = view_.parent;
    auto shape_of = [&](int d) { return *chosen_[d >> 1]; };
    const int dlu = emb.next(2 * p + 1), dru = view_.prev(2 * p);
    const int dlv = view_.prev(2 * p + 1), drv = emb.next(2 * p);
    Shape s;
    s.rlu = leaving_rho(shape_of(dlu), dlu);
    s.rru = entering_rho(shape_of(dru), dru);
    s.rlv = entering_rho(shape_of(dlv), dlv);
    s.rrv = leaving_rho(shape_of(drv), drv);
    const std::vector<int> lus = s.rlu == s.rru ? std::vector<int>{-1, 1} : std::vector<int>{0};
    const std::vector<int> lvs = s.rlv == s.rrv ? std::vector<int>{-1, 1} : std::vector<int>{0};
    for (int lu : lus)
      for (int lv : lvs) {
        s.lu = lu;
        s.lv = lv;
        Precheck pre;
        bool checked = false;
        for (int tl = ctx_.range.lo; tl <= ctx_.range.hi; ++tl) {
          s.tl = tl;
          s.tr = 2 - lu - lv - tl;
          if (!ctx_.range.admits(s)) continue;
          if (target_ && s != *target_) continue;
          if (out_ && out_->contains(s)) continue;
          if (!is_coherent(s)) continue;
          // Only the turns vary below; the checks do not depend on them.
          if (!checked) {
            pre = precheck(view_, s, chosen_);
            checked = true;
            if (!pre.pass) {
              if (trace_)
                *trace_ << "flip " << view_.flip << " lambda=(" << lu << "," << lv
                        << ") precheck failed: " << pre.failed << "\n";
              break;
            }
          }
          try_shape(s, pre);
          if (found_) return;
        }
      }
  }

  void try_shape(const Shape& s, const Precheck& pre) {
    NetworkSpec net;
    try {
      net = build_network(view_, s, chosen_, pre);
    } catch (const NegativeDemand& err) {
      if (trace_) *trace_ << "flip " << view_.flip << " " << to_string(s) << " " << err.what() << "\n";
      return;
    }
    FlowResult flow;
    const bool ok = accepts(net, &flow);
    if (trace_)
      *trace_ << "flip " << view_.flip << " " << to_string(s) << (ok ? " accepted" : " rejected")
              << " supply=" << net.total_supply() << " demand=" << net.total_demand()
              << " flow=" << flow.value << "\n"
              << to_string(net);
    if (!ok) return;
    if (out_) {
      out_->insert(s);
      return;
    }
    const detail::Config c = detail::resolve(view_, chosen_);
    std::vector<Shape> shapes = c.shape;
    for (size_t i = 0; i < net.net.arcs.size(); ++i)
      if (net.arc_edge[i] >= 0 && flow.arc_flow[i] > 0) shapes[net.arc_edge[i]] = *net.arc_choice[i];
    found_ = std::move(shapes);
  }

  const RNodeContext& ctx_;
  std::ostream* trace_;
  RNodeView view_;
  std::vector<int> order_;
  std::vector<int> large_;
  int bad_ = 0;
  std::vector<std::optional<Shape>> chosen_;
  FeasibleSet* out_ = nullptr;
  std::optional<Shape> target_;
  std::optional<std::vector<Shape>> found_;
};

}  // namespace

FeasibleSet r_node_sources(const RNodeContext& ctx, std::ostream* trace) {
  return SourcesSearch(ctx, trace).all();
}

std::optional<std::vector<Shape>> r_node_sources_realize(const RNodeContext& ctx,
                                                         const Shape& target) {
  return SourcesSearch(ctx, nullptr).realize(target);
}

RNodeSubprocedure flow_subprocedure(std::ostream* trace) {
  RNodeSubprocedure sub;
  sub.name = "flow";
  sub.feasible = [trace](const RNodeContext& ctx) { return r_node_sources(ctx, trace); };
  sub.realize = [](const RNodeContext& ctx, const Shape& target) {
    return r_node_sources_realize(ctx, target);
  };
  return sub;
}

}  // namespace upt
