// SPDX-License-Identifier: MIT
#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "config.hpp"
#include "upt/rnode_flow.hpp"

namespace upt {

using detail::Config;
using detail::entering_rho;
using detail::lambda_end;
using detail::leaving_rho;
using Role = RNodeView::Role;

std::pair<int, int> turn_range(int sigma_mu) { return {-2 * sigma_mu - 1, 2 * sigma_mu + 1}; }

int RNodeView::prev(int d) const {
  const int w = emb.tail(d);
  const auto& rot = emb.rotation[w];
  auto it = std::find(rot.begin(), rot.end(), d >> 1);
  const int e = it == rot.begin() ? rot.back() : *std::prev(it);
  return emb.dart_from(e, w) ^ 1;
}

namespace {

std::array<int, 4> extreme_edges(const PlanarEmbedding& emb, int p) {
  RNodeView tmp;
  tmp.emb = emb;
  return {emb.next(2 * p + 1) >> 1, tmp.prev(2 * p) >> 1, tmp.prev(2 * p + 1) >> 1,
          emb.next(2 * p) >> 1};
}

}  // namespace

std::vector<ComponentClass> classify_components(const RNodeContext& ctx,
                                                const PlanarEmbedding& emb) {
  const Skeleton& sk = ctx.tree.node(ctx.node).skeleton;
  const int p = sk.parent_edge();
  std::vector<ComponentClass> out(sk.ends.size());
  for (int e : extreme_edges(emb, p)) out[e].extreme = true;
  for (size_t e = 0; e < sk.ends.size(); ++e) {
    const int c = sk.edge_child[e];
    if (c >= 0) out[e].interesting = ctx.info[c].sigma > 0;
  }
  return out;
}

std::vector<int> component_order(const std::vector<ComponentClass>& classes) {
  std::vector<int> order(classes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_partition(order.begin(), order.end(), [&](int e) {
    return classes[e].extreme || classes[e].interesting;
  });
  return order;
}

RNodeView make_view(const RNodeContext& ctx, int flip) {
  const SpqrNode& node = ctx.tree.node(ctx.node);
  const Skeleton& sk = node.skeleton;
  RNodeView view;
  view.emb = flips(ctx.tree, ctx.node)[flip];
  view.faces = trace_faces(view.emb);
  view.flip = flip;
  view.parent = sk.parent_edge();
  view.u = sk.local(node.u);
  view.v = sk.local(node.v);
  const int n = view.emb.n, m = view.emb.m();
  for (int w = 0; w < n; ++w) {
    view.names.push_back(ctx.g.name(sk.vertices[w]));
    bool sw = ctx.g.is_switch(sk.vertices[w]);
    if (w == view.u) sw = ctx.info[ctx.node].u_switch;
    if (w == view.v) sw = ctx.info[ctx.node].v_switch;
    view.is_switch.push_back(sw);
  }
  view.classes = classify_components(ctx, view.emb);
  view.sets.resize(m);
  view.child_switch.assign(m, {true, true});
  view.roles.assign(m, Role::Parent);
  view.options.resize(m);
  view.wing_vertex.assign(m, -1);
  auto same = [](const std::vector<Shape>& a, Boring x, Boring y) {
    return a.size() == 2 && a[0] != a[1] &&
           std::count(a.begin(), a.end(), boring_shape(x)) == 1 &&
           std::count(a.begin(), a.end(), boring_shape(y)) == 1;
  };
  for (int e = 0; e < m; ++e) {
    if (e == view.parent) continue;
    const int c = sk.edge_child[e];
    const SpqrNode& child = ctx.tree.node(c);
    const bool aligned = child.u == sk.vertices[view.emb.ends[e].first];
    const NodeInfo& ci = ctx.info[c];
    view.child_switch[e] = aligned ? std::array<bool, 2>{ci.u_switch, ci.v_switch}
                                   : std::array<bool, 2>{ci.v_switch, ci.u_switch};
    if (!aligned) throw std::logic_error("skeleton edge not oriented by its child poles");
    if (view.classes[e].extreme || view.classes[e].interesting) {
      view.roles[e] = Role::Enumerated;
      view.sets[e] = ctx.sets[c];
      continue;
    }
    view.sets[e] = preferred_set(ctx.sets[c]);
    const auto shapes = view.sets[e].shapes();
    const auto [a, b] = view.emb.ends[e];
    view.roles[e] = Role::Enumerated;
    if (shapes.size() == 1) {
      view.roles[e] = Role::Fixed;
      view.options[e] = {shapes[0], shapes[0]};
    } else if (same(shapes, Boring::Hat, Boring::InvertedHat)) {
      view.roles[e] = Role::HatPair;
      view.options[e] = {boring_shape(Boring::Hat), boring_shape(Boring::InvertedHat)};
    } else if (same(shapes, Boring::Heart, Boring::InvertedHeart)) {
      view.roles[e] = Role::HeartPair;
      view.options[e] = {boring_shape(Boring::Heart), boring_shape(Boring::InvertedHeart)};
    } else if (same(shapes, Boring::LeftWing, Boring::RightWing)) {
      view.roles[e] = Role::WingPair;
      view.options[e] = {boring_shape(Boring::LeftWing), boring_shape(Boring::RightWing)};
      view.wing_vertex[e] = b;
    } else if (same(shapes, Boring::InvertedLeftWing, Boring::InvertedRightWing)) {
      view.roles[e] = Role::WingPair;
      view.options[e] = {boring_shape(Boring::InvertedLeftWing),
                         boring_shape(Boring::InvertedRightWing)};
      view.wing_vertex[e] = a;
    }
  }
  // A wing pair is decided by the flow only when both of its neighbours at the
  // vertex where it differs are settled.
  for (bool changed = true; changed;) {
    changed = false;
    for (int e = 0; e < m; ++e) {
      if (view.roles[e] != Role::WingPair) continue;
      const int w = view.wing_vertex[e];
      const auto& rot = view.emb.rotation[w];
      const int k = static_cast<int>(rot.size());
      const int i = static_cast<int>(std::find(rot.begin(), rot.end(), e) - rot.begin());
      for (int x : {rot[(i + 1) % k], rot[(i + k - 1) % k]}) {
        if (x == view.parent || (view.roles[x] == Role::WingPair && view.wing_vertex[x] == w)) {
          view.roles[e] = Role::Enumerated;
          view.wing_vertex[e] = -1;
          changed = true;
          break;
        }
      }
    }
  }
  return view;
}

namespace detail {

Config resolve(const RNodeView& view, const std::vector<std::optional<Shape>>& chosen) {
  const PlanarEmbedding& emb = view.emb;
  const int m = emb.m();
  Config c;
  c.role = view.roles;
  c.shape.resize(m);
  c.wing_left.assign(m, {0, 0});
  c.wing_right.assign(m, {0, 0});
  c.skip.assign(2 * m, 0);
  for (int e = 0; e < m; ++e) {
    if (view.roles[e] == Role::Enumerated) {
      if (!chosen[e]) throw std::invalid_argument("no shape chosen for an enumerated component");
      c.shape[e] = *chosen[e];
    } else if (view.roles[e] != Role::Parent) {
      c.shape[e] = view.options[e][0];
    }
  }
  for (int e = 0; e < m; ++e) {
    if (view.roles[e] != Role::WingPair) continue;
    const int w = view.wing_vertex[e];
    if (view.is_switch[w]) throw std::logic_error("wing pair at a switch vertex");
    // Darts whose angles at w touch e: (entering dart, leaving dart).
    int left_in, left_out, right_in, right_out;
    if (view.end_of(e, w) == 1) {
      left_in = 2 * e;
      left_out = emb.next(2 * e);
      right_in = view.prev(2 * e + 1);
      right_out = 2 * e + 1;
    } else {
      right_in = 2 * e + 1;
      right_out = emb.next(2 * e + 1);
      left_in = view.prev(2 * e);
      left_out = 2 * e;
    }
    auto rho_of = [&](int d, bool in, const Shape& x) {
      const Shape& s = (d >> 1) == e ? x : c.shape[d >> 1];
      return in ? entering_rho(s, d) : leaving_rho(s, d);
    };
    int trans[2];
    for (int o = 0; o < 2; ++o) {
      const Shape& x = view.options[e][o];
      const bool eq_l = rho_of(left_in, true, x) == rho_of(left_out, false, x);
      const bool eq_r = rho_of(right_in, true, x) == rho_of(right_out, false, x);
      c.wing_left[e][o] = x.tl - (eq_l ? 1 : 0);
      c.wing_right[e][o] = x.tr - (eq_r ? 1 : 0);
      trans[o] = (eq_l ? 0 : 1) + (eq_r ? 0 : 1);
    }
    const int dl = c.wing_left[e][0] - c.wing_left[e][1];
    const int dr = c.wing_right[e][0] - c.wing_right[e][1];
    if (trans[0] != trans[1]) {
      c.role[e] = Role::Fixed;
      c.shape[e] = view.options[e][trans[0] < trans[1] ? 0 : 1];
    } else if (dl == 0 && dr == 0) {
      c.role[e] = Role::Fixed;
    } else if (std::abs(dl) == 2 && dl == -dr) {
      c.skip[left_in] = 1;
      c.skip[right_in] = 1;
    } else {
      throw std::logic_error("wing pair with unbalanced turns");
    }
  }
  return c;
}

}  // namespace detail

Precheck precheck(const RNodeView& view, const Shape& s,
                  const std::vector<std::optional<Shape>>& chosen) {
  const PlanarEmbedding& emb = view.emb;
  const int n = emb.n, m = emb.m(), p = view.parent;
  Precheck r;
  r.available.assign(n, false);
  auto fail = [&](const char* why) {
    r.failed = why;
    return r;
  };
  if (!is_coherent(s)) return fail("coherence");
  const Config c = detail::resolve(view, chosen);
  {
    int d = emb.next(2 * p + 1);
    if (leaving_rho(c.shape[d >> 1], d) != s.rlu) return fail("extreme-edge");
    d = view.prev(2 * p);
    if (entering_rho(c.shape[d >> 1], d) != s.rru) return fail("extreme-edge");
    d = view.prev(2 * p + 1);
    if (entering_rho(c.shape[d >> 1], d) != s.rlv) return fail("extreme-edge");
    d = emb.next(2 * p);
    if (leaving_rho(c.shape[d >> 1], d) != s.rrv) return fail("extreme-edge");
  }
  std::vector<int> large(n, 0), trans(n, 0);
  for (int e = 0; e < m; ++e) {
    if (e == p) continue;
    for (int end = 0; end < 2; ++end) {
      const int w = end == 0 ? emb.ends[e].first : emb.ends[e].second;
      const Shape& x = c.shape[e];
      const int lam = lambda_end(x, end);
      if (view.is_switch[w]) {
        if (c.role[e] != Role::HeartPair && lam == -1) ++large[w];
        continue;
      }
      if (view.child_switch[e][end]) {
        if (lam == -1 && c.role[e] != Role::HeartPair) return fail("angle");
        continue;
      }
      const bool flat = end == 0 ? x.rlu != x.rru : x.rlv != x.rrv;
      trans[w] += flat ? 1 : 2;
    }
  }
  for (int d = 0; d < 2 * m; ++d) {
    const int d2 = emb.next(d);
    if ((d >> 1) == p || (d2 >> 1) == p) continue;
    const int w = emb.head(d);
    if (view.is_switch[w]) continue;
    if (entering_rho(c.shape[d >> 1], d) != leaving_rho(c.shape[d2 >> 1], d2)) ++trans[w];
  }
  for (int w = 0; w < n; ++w) {
    if (view.is_switch[w]) {
      if (large[w] > 1) return fail("angle");
      r.available[w] = large[w] == 0;
      continue;
    }
    int need = 2;
    if (w == view.u) need = s.rlu != s.rru ? 1 : 2;
    if (w == view.v) need = s.rlv != s.rrv ? 1 : 2;
    if (trans[w] != need) return fail("angle");
  }
  if (s.lu == 1 && !(view.is_switch[view.u] && r.available[view.u])) return fail("pole");
  if (s.lv == 1 && !(view.is_switch[view.v] && r.available[view.v])) return fail("pole");
  r.pass = true;
  return r;
}

int NetworkSpec::total_supply() const {
  int t = 0;
  for (int x : net.supply) t += x;
  return t;
}

int NetworkSpec::total_demand() const {
  int t = 0;
  for (int x : net.demand) t += x;
  return t;
}

int NetworkSpec::demand_of(Kind k, int ref) const {
  for (size_t i = 0; i < sink_kind.size(); ++i)
    if (sink_kind[i] == k && (ref < 0 || sink_ref[i] == ref)) return net.demand[i];
  return -1;
}

const char* to_string(NetworkSpec::Kind k) {
  using K = NetworkSpec::Kind;
  switch (k) {
    case K::SwitchVertex: return "switch-vertex";
    case K::NonSwitchVertex: return "non-switch-vertex";
    case K::ComponentLeft: return "component-left";
    case K::ComponentRight: return "component-right";
    case K::BoringHat: return "boring-hat";
    case K::BoringHeartLeft: return "boring-heart-left";
    case K::BoringHeartRight: return "boring-heart-right";
    case K::Face: return "face";
    case K::TurnLeft: return "turn-left";
    case K::TurnRight: return "turn-right";
    case K::Heart: return "heart";
    case K::PoleU: return "pole-u";
    case K::PoleV: return "pole-v";
  }
  return "?";
}

std::string to_string(const NetworkSpec& n) {
  std::ostringstream os;
  os << "sources:";
  for (size_t i = 0; i < n.net.supply.size(); ++i)
    os << " " << n.source_label[i] << "=" << n.net.supply[i];
  os << "\nsinks:";
  for (size_t i = 0; i < n.net.demand.size(); ++i)
    os << " " << n.sink_label[i] << "=" << n.net.demand[i];
  os << "\narcs:";
  for (size_t i = 0; i < n.net.arcs.size(); ++i) {
    const auto& a = n.net.arcs[i];
    os << " " << n.source_label[a.source] << "->" << n.sink_label[a.sink];
    if (a.capacity != 1) os << "(" << a.capacity << ")";
    if (n.arc_choice[i]) os << "[" << to_string(*n.arc_choice[i]) << "]";
  }
  os << "\n";
  return os.str();
}

NetworkSpec build_network(const RNodeView& view, const Shape& s,
                          const std::vector<std::optional<Shape>>& chosen, const Precheck& pre) {
  using K = NetworkSpec::Kind;
  const PlanarEmbedding& emb = view.emb;
  const Faces& faces = view.faces;
  const int n = emb.n, m = emb.m(), p = view.parent;
  const Config c = detail::resolve(view, chosen);
  NetworkSpec net;
  const int fl_outer = view.left_face(), fr_outer = view.right_face();
  const int nf_count = faces.count();
  std::vector<int> nf(nf_count, 0);

  auto add_sink = [&](K kind, int ref, std::string label, int demand) {
    net.sink_kind.push_back(kind);
    net.sink_ref.push_back(ref);
    net.sink_label.push_back(std::move(label));
    net.net.demand.push_back(demand);
    return static_cast<int>(net.net.demand.size()) - 1;
  };
  auto add_source = [&](K kind, int ref, std::string label, int supply) {
    net.source_kind.push_back(kind);
    net.source_ref.push_back(ref);
    net.source_label.push_back(std::move(label));
    net.net.supply.push_back(supply);
    return static_cast<int>(net.net.supply.size()) - 1;
  };
  auto add_arc = [&](int from, int to, int cap, int edge = -1,
                     std::optional<Shape> choice = std::nullopt) {
    if (!choice)
      for (size_t i = 0; i < net.net.arcs.size(); ++i) {
        auto& a = net.net.arcs[i];
        if (a.source == from && a.sink == to && !net.arc_choice[i]) {
          a.capacity += cap;
          return;
        }
      }
    net.net.arcs.push_back({from, to, cap});
    net.arc_choice.push_back(choice);
    net.arc_edge.push_back(edge);
  };
  auto edge_name = [&](int e) {
    return view.names[emb.ends[e].first] + "-" + view.names[emb.ends[e].second];
  };

  for (int f = 0; f < nf_count; ++f) {
    if (f == fl_outer)
      add_sink(K::TurnLeft, f, "t_l", 0);
    else if (f == fr_outer)
      add_sink(K::TurnRight, f, "t_r", 0);
    else
      add_sink(K::Face, f, "t_f" + std::to_string(f), 0);
  }
  auto add_value = [&](int f, int x, K kind, int e, const std::string& label) {
    if (x < 0) nf[f] -= x;
    if (x <= 0) return;
    nf[f] += x;
    add_arc(add_source(kind, e, label, x), f, x);
  };

  std::vector<int> vsrc(n, -1);
  for (int w = 0; w < n; ++w)
    if (view.is_switch[w] && pre.available[w])
      vsrc[w] = add_source(K::SwitchVertex, w, "s_" + view.names[w], 1);
  auto blocked = [&](int w) { return (w == view.u && s.lu == 1) || (w == view.v && s.lv == 1); };
  if (s.lu == 1 && vsrc[view.u] >= 0) add_arc(vsrc[view.u], add_sink(K::PoleU, view.u, "t^u", 1), 1);
  if (s.lv == 1 && vsrc[view.v] >= 0) add_arc(vsrc[view.v], add_sink(K::PoleV, view.v, "t^v", 1), 1);

  for (int e = 0; e < m; ++e) {
    if (e == p) continue;
    const int fl = faces.face_of_dart[2 * e], fr = faces.face_of_dart[2 * e + 1];
    const auto [a, b] = emb.ends[e];
    const std::string name = edge_name(e);
    switch (c.role[e]) {
      case Role::Parent:
        break;
      case Role::Enumerated:
      case Role::Fixed:
        add_value(fl, c.shape[e].tl, K::ComponentLeft, e, "z_l^" + name);
        add_value(fr, c.shape[e].tr, K::ComponentRight, e, "z_r^" + name);
        break;
      case Role::HatPair: {
        ++nf[fl];
        ++nf[fr];
        const int src = add_source(K::BoringHat, e, "b^" + name, 1);
        add_arc(src, fl, 1, e, boring_shape(Boring::InvertedHat));
        add_arc(src, fr, 1, e, boring_shape(Boring::Hat));
        break;
      }
      case Role::HeartPair: {
        add_value(fl, 1, K::BoringHeartLeft, e, "b1^" + name);
        add_value(fr, 1, K::BoringHeartRight, e, "b2^" + name);
        const int t = add_sink(K::Heart, e, "t_" + name, 1);
        if (vsrc[b] >= 0 && !blocked(b)) add_arc(vsrc[b], t, 1, e, boring_shape(Boring::Heart));
        if (vsrc[a] >= 0 && !blocked(a))
          add_arc(vsrc[a], t, 1, e, boring_shape(Boring::InvertedHeart));
        break;
      }
      case Role::WingPair: {
        const auto& wl = c.wing_left[e];
        const auto& wr = c.wing_right[e];
        add_value(fl, std::min(wl[0], wl[1]), K::ComponentLeft, e, "z_l^" + name);
        add_value(fr, std::min(wr[0], wr[1]), K::ComponentRight, e, "z_r^" + name);
        const int w = view.wing_vertex[e];
        const int src = add_source(K::NonSwitchVertex, w, "s_" + view.names[w] + "^" + name, 1);
        add_arc(src, fl, 1, e, view.options[e][wl[0] > wl[1] ? 0 : 1]);
        add_arc(src, fr, 1, e, view.options[e][wr[0] > wr[1] ? 0 : 1]);
        break;
      }
    }
  }

  for (int d = 0; d < 2 * m; ++d) {
    const int d2 = emb.next(d);
    if ((d >> 1) == p || (d2 >> 1) == p || c.skip[d]) continue;
    const int w = emb.head(d), f = faces.face_of_dart[d];
    if (view.is_switch[w]) {
      ++nf[f];
      if (vsrc[w] >= 0 && !blocked(w)) add_arc(vsrc[w], f, 1);
    } else if (entering_rho(c.shape[d >> 1], d) == leaving_rho(c.shape[d2 >> 1], d2)) {
      ++nf[f];
    }
  }

  for (int f = 0; f < nf_count; ++f) {
    const int target = f == fl_outer ? s.tl : f == fr_outer ? s.tr : -2;
    const int x = target + nf[f];
    if (x < 0 || x % 2 != 0)
      throw NegativeDemand(net.sink_label[f] + " needs (" + std::to_string(target) + " + " +
                           std::to_string(nf[f]) + ") / 2 units");
    net.net.demand[f] = x / 2;
  }
  return net;
}

bool accepts(const NetworkSpec& n, FlowResult* flow) {
  const int demand = n.total_demand();
  if (n.total_supply() != demand) return false;
  FlowResult r = max_flow(n.net);
  const bool ok = r.value == demand;
  if (flow) *flow = std::move(r);
  return ok;
}

}  // namespace upt
