// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "upt/rnode_tw.hpp"

namespace upt {

namespace {

using NodeKind = NiceTreeDecomposition::Kind;

Rho entering_rho(const Shape& s, int d) { return d & 1 ? s.rru : s.rlv; }
Rho leaving_rho(const Shape& s, int d) { return d & 1 ? s.rrv : s.rlu; }
int lambda_end(const Shape& s, int end) { return end == 0 ? s.lu : s.lv; }

// Label of e at its end w on the side of face f.
Rho rho_at(const PlanarEmbedding& h, const Faces& faces, const Shape& s, int e, int w, int f) {
  for (int d : {2 * e, 2 * e + 1}) {
    if (faces.face_of_dart[d] != f) continue;
    return h.head(d) == w ? entering_rho(s, d) : leaving_rho(s, d);
  }
  throw std::logic_error("edge not on face");
}

// Pole data taken from the target shape; the turns may be left free.
struct Boundary {
  int lu = 0, lv = 0;
  Rho rlu = Rho::Out, rru = Rho::Out, rlv = Rho::Out, rrv = Rho::Out;
};

Boundary boundary_of(const Shape& s) { return {s.lu, s.lv, s.rlu, s.rru, s.rlv, s.rrv}; }

enum class Tag { None, Left, Right, PoleU, PoleV };

// A contribution or check involving up to four vertices of the embedding
// graph; handled once, when its first member is forgotten.
struct Event {
  enum class Type { SwitchEdge, NonSwitchEdge, SwitchFace, FaceEdge, Angle } type;
  std::vector<int> members;
  int w = -1, e = -1, e2 = -1, f = -1;
  int end = 0;   // end of e at w
  int side = 0;  // FaceEdge: 0 when f is the face of dart 2e
  int dart = -1;  // Angle: dart entering w
  Tag tag = Tag::None;
};

struct Back {
  int a = -1, b = -1;
  std::vector<std::pair<int, int>> takes;  // (true vertex, embedding graph vertex)
  int edge = -1, shape = -1;               // edge forgotten here and its shape
};

using Record = std::vector<int>;

struct RecordHash {
  size_t operator()(const Record& r) const {
    size_t h = r.size();
    for (int x : r) h = h * 1000003u ^ static_cast<size_t>(x + 0x9e3779b9);
    return h;
  }
};

struct NodeRecords {
  std::vector<Record> recs;
  std::vector<Back> back;
  std::unordered_map<Record, int, RecordHash> index;

  void add(Record r, Back b, bool track) {
    auto [it, fresh] = index.try_emplace(r, static_cast<int>(recs.size()));
    if (!fresh) return;
    recs.push_back(std::move(r));
    if (track) back.push_back(std::move(b));
  }
  void release() {
    std::vector<Record>().swap(recs);
    std::vector<Back>().swap(back);
    std::unordered_map<Record, int, RecordHash>().swap(index);
  }
};

class ValidPairDp {
public:
  ValidPairDp(const TwInstance& inst, const NiceTreeDecomposition& td, const Boundary& b,
              bool track, std::ostream* trace)
      : inst_(inst), g_(inst.graph), td_(td), b_(b), track_(track), trace_(trace) {
    build_events();
  }

  // (left, right) sums of every valid pair, or of none.
  std::vector<std::pair<int, int>> run() {
    const int count = static_cast<int>(td_.nodes.size());
    recs_.assign(count, {});
    std::vector<int> order;
    std::vector<int> stack{td_.root};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (int c : td_.nodes[x].children) stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      process(*it);
      if (!track_)
        for (int c : td_.nodes[*it].children) recs_[c].release();
    }
    std::vector<std::pair<int, int>> out;
    for (const Record& r : recs_[td_.root].recs) out.emplace_back(r[0], r[1]);
    return out;
  }

  ValidPair witness(int left, int right) const {
    const NodeRecords& top = recs_[td_.root];
    int start = -1;
    for (size_t i = 0; i < top.recs.size(); ++i)
      if (top.recs[i][0] == left && top.recs[i][1] == right) start = static_cast<int>(i);
    if (start < 0) throw std::logic_error("no record for the requested turns");
    ValidPair p;
    p.alpha.assign(inst_.h.n, std::nullopt);
    p.beta.assign(inst_.h.m(), Shape{});
    std::vector<std::pair<int, int>> todo{{td_.root, start}};
    while (!todo.empty()) {
      auto [node, r] = todo.back();
      todo.pop_back();
      const Back& bk = recs_[node].back[r];
      for (auto [w, y] : bk.takes) {
        ValidPair::Large l;
        l.in_edge = g_.kind(y) == EmbeddingGraph::Kind::Edge;
        l.id = l.in_edge ? y - g_.true_count : y - g_.true_count - g_.edge_count;
        p.alpha[w] = l;
      }
      if (bk.edge >= 0) p.beta[bk.edge] = inst_.sets[bk.edge][bk.shape];
      const auto& kids = td_.nodes[node].children;
      if (bk.a >= 0) todo.emplace_back(kids[0], bk.a);
      if (bk.b >= 0) todo.emplace_back(kids[1], bk.b);
    }
    return p;
  }

private:
  void build_events() {
    const PlanarEmbedding& h = inst_.h;
    const Faces& faces = inst_.faces;
    const int outer = faces.outer;
    for (int e = 0; e < h.m(); ++e)
      for (int end = 0; end < 2; ++end) {
        Event ev;
        ev.w = end == 0 ? h.ends[e].first : h.ends[e].second;
        ev.type = inst_.is_switch[ev.w] ? Event::Type::SwitchEdge : Event::Type::NonSwitchEdge;
        ev.e = e;
        ev.end = end;
        ev.members = {ev.w, g_.edge_vertex(e)};
        events_.push_back(ev);
      }
    for (int d = 0; d < 2 * h.m(); ++d) {
      const int f = faces.face_of_dart[d];
      Event side;
      side.type = Event::Type::FaceEdge;
      side.e = d >> 1;
      side.f = f;
      side.side = d & 1;
      if (f == outer) side.tag = inst_.left_edge[side.e] ? Tag::Left : Tag::Right;
      side.members = {g_.face_vertex(f), g_.edge_vertex(side.e)};
      events_.push_back(side);

      Event ang;
      ang.w = h.head(d);
      ang.f = f;
      ang.dart = d;
      if (f == outer) {
        if (ang.w == inst_.u) ang.tag = Tag::PoleU;
        else if (ang.w == inst_.v) ang.tag = Tag::PoleV;
        else ang.tag = inst_.left_vertex[ang.w] ? Tag::Left : Tag::Right;
      }
      if (inst_.is_switch[ang.w]) {
        ang.type = Event::Type::SwitchFace;
        ang.members = {ang.w, g_.face_vertex(f)};
      } else {
        ang.type = Event::Type::Angle;
        ang.e = d >> 1;
        ang.e2 = h.next(d) >> 1;
        ang.members = {ang.w, g_.edge_vertex(ang.e), g_.edge_vertex(ang.e2), g_.face_vertex(f)};
        std::sort(ang.members.begin(), ang.members.end());
        ang.members.erase(std::unique(ang.members.begin(), ang.members.end()), ang.members.end());
      }
      events_.push_back(ang);
    }
    by_vertex_.assign(g_.size(), {});
    for (size_t i = 0; i < events_.size(); ++i)
      for (int x : events_[i].members) by_vertex_[x].push_back(static_cast<int>(i));
  }

  int want(Tag t) const { return t == Tag::PoleU ? b_.lu : b_.lv; }

  // Unary conditions on the shape of an introduced edge: pole labels of the
  // extreme edges.
  bool edge_allowed(int e, const Shape& s) const {
    const int outer = inst_.faces.outer;
    const auto [a, c] = inst_.h.ends[e];
    for (int w : {a, c}) {
      if (w != inst_.u && w != inst_.v) continue;
      const bool on_left = inst_.left_edge[e], on_right = inst_.right_edge[e];
      if (!on_left && !on_right) continue;
      const Rho r = rho_at(inst_.h, inst_.faces, s, e, w, outer);
      const Rho expect = w == inst_.u ? (on_left ? b_.rlu : b_.rru) : (on_left ? b_.rlv : b_.rrv);
      if (r != expect) return false;
    }
    return true;
  }

  // Positions of bag vertices inside a record.
  static int slot(const std::vector<int>& bag, int x) {
    auto it = std::lower_bound(bag.begin(), bag.end(), x);
    if (it == bag.end() || *it != x) return -1;
    return static_cast<int>(it - bag.begin());
  }

  bool in_range(int x) const { return x >= -inst_.zeta && x <= inst_.zeta; }

  const Shape& shape(const Record& r, const std::vector<int>& bag, int e) const {
    return inst_.sets[e][r[slot(bag, g_.edge_vertex(e))]];
  }

  // Applies events[i..] to r, emitting every outcome.
  void apply(const std::vector<int>& evs, size_t i, Record& r, const std::vector<int>& bag,
             std::vector<std::pair<int, int>>& takes,
             const std::function<void(const Record&, const std::vector<std::pair<int, int>>&)>& emit) {
    if (i == evs.size()) {
      emit(r, takes);
      return;
    }
    const Event& ev = events_[evs[i]];
    const int L = static_cast<int>(bag.size()), R = L + 1;
    auto add = [&](int pos, int value, Tag tag, auto&& next) {
      r[pos] += value;
      if (tag == Tag::Left) r[L] += value;
      if (tag == Tag::Right) r[R] += value;
      if (in_range(r[pos]) && in_range(r[L]) && in_range(r[R])) next();
      r[pos] -= value;
      if (tag == Tag::Left) r[L] -= value;
      if (tag == Tag::Right) r[R] -= value;
    };
    auto recurse = [&] { apply(evs, i + 1, r, bag, takes, emit); };
    switch (ev.type) {
      case Event::Type::SwitchEdge: {
        const int lam = lambda_end(shape(r, bag, ev.e), ev.end);
        const int pw = slot(bag, ev.w);
        if (lam == 1) recurse();
        if (lam != -1 || r[pw] == 1) return;
        r[pw] = 1;
        takes.emplace_back(ev.w, g_.edge_vertex(ev.e));
        recurse();
        takes.pop_back();
        r[pw] = 0;
        return;
      }
      case Event::Type::NonSwitchEdge: {
        const int lam = lambda_end(shape(r, bag, ev.e), ev.end);
        const bool ok = inst_.child_switch[ev.e][ev.end] ? lam == 1 : lam <= 0;
        if (ok) recurse();
        return;
      }
      case Event::Type::FaceEdge: {
        const Shape& s = shape(r, bag, ev.e);
        add(slot(bag, g_.face_vertex(ev.f)), ev.side == 0 ? s.tl : s.tr, ev.tag, recurse);
        return;
      }
      case Event::Type::SwitchFace: {
        const int pw = slot(bag, ev.w), pf = slot(bag, g_.face_vertex(ev.f));
        const bool pole = ev.tag == Tag::PoleU || ev.tag == Tag::PoleV;
        const bool may_skip = !pole || want(ev.tag) == -1;
        const bool may_take = (!pole || want(ev.tag) == 1) && r[pw] == 0;
        if (may_skip) add(pf, -1, ev.tag, recurse);
        if (may_take) {
          r[pw] = 1;
          takes.emplace_back(ev.w, g_.face_vertex(ev.f));
          add(pf, 1, ev.tag, recurse);
          takes.pop_back();
          r[pw] = 0;
        }
        return;
      }
      case Event::Type::Angle: {
        const Rho in = entering_rho(shape(r, bag, ev.e), ev.dart);
        const Rho out = leaving_rho(shape(r, bag, ev.e2), inst_.h.next(ev.dart));
        const int value = in != out ? 0 : -1;
        if ((ev.tag == Tag::PoleU || ev.tag == Tag::PoleV) && value != want(ev.tag)) return;
        add(slot(bag, g_.face_vertex(ev.f)), value, ev.tag, recurse);
        return;
      }
    }
  }

  double log_bound(const std::vector<int>& bag) const {
    double b = 2 * std::log(2.0 * inst_.zeta + 1);
    for (int x : bag) {
      switch (g_.kind(x)) {
        case EmbeddingGraph::Kind::Face: b += std::log(2.0 * inst_.zeta + 1); break;
        case EmbeddingGraph::Kind::Edge:
          b += std::log(std::max<double>(1, inst_.sets[x - g_.true_count].size()));
          break;
        case EmbeddingGraph::Kind::True:
          if (inst_.is_switch[x]) b += std::log(g_.adj[x].size() + 2.0);
          break;
      }
    }
    return b;
  }

  void process(int id) {
    const auto& node = td_.nodes[id];
    NodeRecords& out = recs_[id];
    const auto& bag = node.bag;
    switch (node.kind) {
      case NodeKind::Leaf: {
        Record r(bag.size() + 2, 0);
        out.add(r, {}, track_);
        break;
      }
      case NodeKind::Introduce: {
        const NodeRecords& in = recs_[node.children[0]];
        const int x = node.vertex, px = slot(bag, x);
        for (size_t i = 0; i < in.recs.size(); ++i) {
          Record r = in.recs[i];
          r.insert(r.begin() + px, 0);
          Back bk;
          bk.a = static_cast<int>(i);
          if (g_.kind(x) == EmbeddingGraph::Kind::Edge) {
            const int e = x - g_.true_count;
            for (size_t s = 0; s < inst_.sets[e].size(); ++s) {
              if (!edge_allowed(e, inst_.sets[e][s])) continue;
              r[px] = static_cast<int>(s);
              out.add(r, bk, track_);
            }
          } else {
            out.add(r, bk, track_);
          }
        }
        break;
      }
      case NodeKind::Forget: {
        const NodeRecords& in = recs_[node.children[0]];
        const int x = node.vertex;
        const auto& cbag = td_.nodes[node.children[0]].bag;
        const int px = slot(cbag, x);
        std::vector<int> evs;
        for (int i : by_vertex_[x]) {
          bool all = true;
          for (int y : events_[i].members) all = all && slot(cbag, y) >= 0;
          if (all) evs.push_back(i);
        }
        const auto kind = g_.kind(x);
        for (size_t i = 0; i < in.recs.size(); ++i) {
          Record r = in.recs[i];
          std::vector<std::pair<int, int>> takes;
          apply(evs, 0, r, cbag, takes, [&](const Record& done, const auto& tk) {
            if (kind == EmbeddingGraph::Kind::True && inst_.is_switch[x] && done[px] != 1) return;
            if (kind == EmbeddingGraph::Kind::Face && done[px] != (x == g_.outer ? 2 : -2)) return;
            Record next = done;
            next.erase(next.begin() + px);
            Back bk;
            bk.a = static_cast<int>(i);
            if (track_) {
              bk.takes = tk;
              if (kind == EmbeddingGraph::Kind::Edge) {
                bk.edge = x - g_.true_count;
                bk.shape = done[px];
              }
            }
            out.add(std::move(next), std::move(bk), track_);
          });
        }
        break;
      }
      case NodeKind::Join: {
        const NodeRecords& a = recs_[node.children[0]];
        const NodeRecords& b = recs_[node.children[1]];
        std::vector<int> edges, trues, scores;
        for (size_t i = 0; i < bag.size(); ++i) {
          const auto k = g_.kind(bag[i]);
          if (k == EmbeddingGraph::Kind::Edge) edges.push_back(static_cast<int>(i));
          else if (k == EmbeddingGraph::Kind::Face) scores.push_back(static_cast<int>(i));
          else if (inst_.is_switch[bag[i]]) trues.push_back(static_cast<int>(i));
        }
        scores.push_back(static_cast<int>(bag.size()));
        scores.push_back(static_cast<int>(bag.size()) + 1);
        auto key = [&](const Record& r) {
          Record k;
          for (int i : edges) k.push_back(r[i]);
          return k;
        };
        std::unordered_map<Record, std::vector<int>, RecordHash> groups;
        for (size_t j = 0; j < b.recs.size(); ++j) groups[key(b.recs[j])].push_back(static_cast<int>(j));
        for (size_t i = 0; i < a.recs.size(); ++i) {
          auto it = groups.find(key(a.recs[i]));
          if (it == groups.end()) continue;
          for (int j : it->second) {
            const Record& ra = a.recs[i];
            const Record& rb = b.recs[j];
            Record r = ra;
            bool ok = true;
            for (int t : trues) {
              if (ra[t] + rb[t] > 1) ok = false;
              r[t] = ra[t] + rb[t];
            }
            for (int s : scores) {
              r[s] = ra[s] + rb[s];
              if (!in_range(r[s])) ok = false;
            }
            if (!ok) continue;
            Back bk;
            bk.a = static_cast<int>(i);
            bk.b = j;
            out.add(std::move(r), std::move(bk), track_);
          }
        }
        break;
      }
    }
    if (std::log(static_cast<double>(out.recs.size()) + 0.5) > log_bound(bag) + 1e-9)
      throw std::logic_error("record count exceeds its bound");
    if (trace_)
      *trace_ << "node " << id << " " << to_string(node.kind) << " vertex=" << node.vertex
              << " bag=" << bag.size() << " records=" << out.recs.size() << "\n";
  }

  const TwInstance& inst_;
  const EmbeddingGraph& g_;
  const NiceTreeDecomposition& td_;
  Boundary b_;
  bool track_;
  std::ostream* trace_;
  std::vector<Event> events_;
  std::vector<std::vector<int>> by_vertex_;
  std::vector<NodeRecords> recs_;
};

// Possible labels of the extreme edge on the given outer path at pole w.
std::vector<Rho> extreme_rhos(const TwInstance& inst, int w, bool left) {
  std::vector<Rho> out;
  for (int e = 0; e < inst.h.m(); ++e) {
    const auto [a, c] = inst.h.ends[e];
    if ((a != w && c != w) || !(left ? inst.left_edge[e] : inst.right_edge[e])) continue;
    for (const Shape& s : inst.sets[e]) {
      const Rho r = rho_at(inst.h, inst.faces, s, e, w, inst.faces.outer);
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
  }
  return out;
}

std::vector<int> pole_lambdas(Rho l, Rho r) {
  return l == r ? std::vector<int>{-1, 1} : std::vector<int>{0};
}

}  // namespace

std::optional<ValidPair> valid_pair_dp(const TwInstance& inst, const NiceTreeDecomposition& td,
                                       const Shape& psi, std::ostream* trace) {
  ValidPairDp dp(inst, td, boundary_of(psi), true, trace);
  for (auto [l, r] : dp.run())
    if (l == psi.tl && r == psi.tr) return dp.witness(l, r);
  return std::nullopt;
}

std::string check_valid_pair(const TwInstance& inst, const Shape& psi, const ValidPair& p) {
  const PlanarEmbedding& h = inst.h;
  const Faces& faces = inst.faces;
  const int outer = faces.outer;
  const int m = h.m();
  if (static_cast<int>(p.beta.size()) != m || static_cast<int>(p.alpha.size()) != h.n)
    return "pair size mismatch";
  for (int e = 0; e < m; ++e)
    if (std::find(inst.sets[e].begin(), inst.sets[e].end(), p.beta[e]) == inst.sets[e].end())
      return "shape outside the child set";

  // Angle values per dart entering a vertex.
  std::vector<int> angle(2 * m, 0);
  for (int d = 0; d < 2 * m; ++d) {
    const int w = h.head(d), f = faces.face_of_dart[d];
    if (inst.is_switch[w]) {
      if (!p.alpha[w]) return "switch vertex without a large angle";
      angle[d] = !p.alpha[w]->in_edge && p.alpha[w]->id == f ? 1 : -1;
    } else {
      const Rho in = entering_rho(p.beta[d >> 1], d);
      const Rho out = leaving_rho(p.beta[h.next(d) >> 1], h.next(d));
      angle[d] = in != out ? 0 : -1;
    }
  }

  // Condition 2: internal angles at the ends of every component.
  for (int w = 0; w < h.n; ++w) {
    if (inst.is_switch[w] && !p.alpha[w]->in_edge) {
      bool incident = false;
      for (int d = 0; d < 2 * m; ++d)
        if (h.head(d) == w && faces.face_of_dart[d] == p.alpha[w]->id) incident = true;
      if (!incident) return "large angle in a face not at its vertex";
    }
  }
  for (int e = 0; e < m; ++e)
    for (int end = 0; end < 2; ++end) {
      const int w = end == 0 ? h.ends[e].first : h.ends[e].second;
      const int lam = lambda_end(p.beta[e], end);
      if (inst.is_switch[w]) {
        const bool here = p.alpha[w]->in_edge && p.alpha[w]->id == e;
        if (lam != (here ? -1 : 1)) return "switch vertex label mismatch";
      } else if (inst.child_switch[e][end] ? lam != 1 : lam > 0) {
        return "non-switch vertex label mismatch";
      }
    }
  for (int w = 0; w < h.n; ++w)
    if (inst.is_switch[w] && p.alpha[w]->in_edge) {
      const auto [a, c] = h.ends[p.alpha[w]->id];
      if (a != w && c != w) return "large angle in a component not at its vertex";
    }

  // Condition 1: face sums.
  std::vector<int> sum(faces.count(), 0);
  for (int d = 0; d < 2 * m; ++d) {
    const int f = faces.face_of_dart[d];
    sum[f] += (d & 1 ? p.beta[d >> 1].tr : p.beta[d >> 1].tl) + angle[d];
  }
  for (int f = 0; f < faces.count(); ++f)
    if (sum[f] != (f == outer ? 2 : -2)) return "face sum";

  // Condition 3: the outer paths and poles match psi.
  int left = 0, right = 0;
  for (int d = 0; d < 2 * m; ++d) {
    if (faces.face_of_dart[d] != outer) continue;
    const int e = d >> 1, w = h.head(d);
    const int turn = d & 1 ? p.beta[e].tr : p.beta[e].tl;
    (inst.left_edge[e] ? left : right) += turn;
    if (w == inst.u) {
      if (angle[d] != psi.lu) return "pole angle at u";
    } else if (w == inst.v) {
      if (angle[d] != psi.lv) return "pole angle at v";
    } else {
      (inst.left_vertex[w] ? left : right) += angle[d];
    }
  }
  if (left != psi.tl || right != psi.tr) return "outer path turns";
  for (int e = 0; e < m; ++e)
    for (int w : {h.ends[e].first, h.ends[e].second}) {
      if (w != inst.u && w != inst.v) continue;
      if (!inst.left_edge[e] && !inst.right_edge[e]) continue;
      const Rho r = rho_at(h, faces, p.beta[e], e, w, outer);
      const bool l = inst.left_edge[e];
      const Rho expect = w == inst.u ? (l ? psi.rlu : psi.rru) : (l ? psi.rlv : psi.rrv);
      if (r != expect) return "pole label";
    }
  return "";
}

FeasibleSet r_node_treewidth(const RNodeContext& ctx, std::ostream* trace, int zeta) {
  FeasibleSet out = ctx.range.empty_set();
  for (int flip = 0; flip < 2; ++flip) {
    const TwInstance inst = tw_instance(ctx, flip, zeta);
    const NiceTreeDecomposition td = tree_decomposition(inst.graph.adj, inst.graph.outer);
    if (trace)
      *trace << "flip " << flip << " embedding graph " << inst.graph.size() << " vertices, width "
             << td.width() << "\n";
    for (Rho rlu : extreme_rhos(inst, inst.u, true))
      for (Rho rru : extreme_rhos(inst, inst.u, false))
        for (Rho rlv : extreme_rhos(inst, inst.v, true))
          for (Rho rrv : extreme_rhos(inst, inst.v, false))
            for (int lu : pole_lambdas(rlu, rru))
              for (int lv : pole_lambdas(rlv, rrv)) {
                const Boundary b{lu, lv, rlu, rru, rlv, rrv};
                ValidPairDp dp(inst, td, b, false, trace);
                for (auto [l, r] : dp.run()) {
                  const Shape s{l, r, lu, lv, rlu, rru, rlv, rrv};
                  if (ctx.range.admits(s) && is_coherent(s)) out.insert(s);
                }
              }
  }
  return out;
}

std::string to_string(const TwInstance& inst, const ValidPair& p) {
  auto edge_name = [&](int e) {
    return inst.names[inst.h.ends[e].first] + "-" + inst.names[inst.h.ends[e].second];
  };
  std::string out;
  for (int w = 0; w < inst.h.n; ++w) {
    if (!p.alpha[w]) continue;
    out += "alpha " + inst.names[w] + " ";
    if (p.alpha[w]->in_edge) {
      out += "edge " + edge_name(p.alpha[w]->id);
    } else {
      out += "face";
      for (int d : inst.faces.walks[p.alpha[w]->id]) out += " " + inst.names[inst.h.head(d)];
    }
    out += "\n";
  }
  for (int e = 0; e < inst.h.m(); ++e) out += "beta " + edge_name(e) + " " + to_string(p.beta[e]) + "\n";
  return out;
}

std::optional<std::vector<Shape>> r_node_treewidth_realize(const RNodeContext& ctx,
                                                           const Shape& target, int zeta,
                                                           const PairSink& sink) {
  for (int flip = 0; flip < 2; ++flip) {
    const TwInstance inst = tw_instance(ctx, flip, zeta);
    const NiceTreeDecomposition td = tree_decomposition(inst.graph.adj, inst.graph.outer);
    const auto pair = valid_pair_dp(inst, td, target);
    if (!pair) continue;
    const std::string bad = check_valid_pair(inst, target, *pair);
    if (!bad.empty()) throw std::logic_error("dynamic program produced an invalid pair: " + bad);
    if (sink) sink(ctx, inst, target, *pair);
    std::vector<Shape> shapes(inst.h.m() + 1);
    for (int e = 0; e < inst.h.m(); ++e) shapes[inst.skeleton_edge[e]] = pair->beta[e];
    return shapes;
  }
  return std::nullopt;
}

RNodeSubprocedure treewidth_subprocedure(std::ostream* trace, int zeta, PairSink sink) {
  RNodeSubprocedure sub;
  sub.name = "treewidth";
  sub.feasible = [trace, zeta](const RNodeContext& ctx) { return r_node_treewidth(ctx, trace, zeta); };
  sub.realize = [zeta, sink](const RNodeContext& ctx, const Shape& target) {
    return r_node_treewidth_realize(ctx, target, zeta, sink);
  };
  return sub;
}

}  // namespace upt
