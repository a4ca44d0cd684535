#include "pappus/digraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace pappus {

void DirectedGraph::add_edge(int label, std::string tail, std::string head) {
  if (label < 1) throw PreconditionError("edge labels must be positive");
  if (tail == head) throw PreconditionError("loops are not allowed: edge " + std::to_string(label));
  for (const Edge& e : edges_) {
    if (e.label == label)
      throw PreconditionError("duplicate edge label " + std::to_string(label));
    if ((e.tail == tail && e.head == head) || (e.tail == head && e.head == tail))
      throw PreconditionError("parallel or antiparallel edge between " + tail + " and " + head);
  }
  vertices_.insert(tail);
  vertices_.insert(head);
  edges_.push_back(Edge{label, std::move(tail), std::move(head)});
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.label < b.label; });
}

const Edge& DirectedGraph::edge(int label) const {
  for (const Edge& e : edges_)
    if (e.label == label) return e;
  throw PreconditionError("no edge labelled " + std::to_string(label));
}

bool DirectedGraph::has_edge(int label) const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.label == label; });
}

int DirectedGraph::max_label() const {
  int m = 0;
  for (const Edge& e : edges_) m = std::max(m, e.label);
  return m;
}

void DirectedGraph::validate_labels() const {
  const int n = edge_count();
  for (const Edge& e : edges_)
    if (e.label > n)
      throw PreconditionError("edge labels must be 1.." + std::to_string(n) +
                              " (found " + std::to_string(e.label) + ")");
}

DirectedGraph DirectedGraph::reversed(const std::set<int>& labels) const {
  DirectedGraph out;
  for (const Edge& e : edges_) {
    if (labels.count(e.label))
      out.add_edge(e.label, e.head, e.tail);
    else
      out.add_edge(e.label, e.tail, e.head);
  }
  return out;
}

std::vector<int> DirectedGraph::incident_labels(const std::string& v) const {
  std::vector<int> out;
  for (const Edge& e : edges_)
    if (e.tail == v || e.head == v) out.push_back(e.label);
  return out;
}

namespace {

// Connectivity of the subgraph induced by `verts` using only `edge_ok` edges.
bool connected_subgraph(const DirectedGraph& g, const std::set<std::string>& verts,
                        const std::function<bool(const Edge&)>& edge_ok) {
  if (verts.empty()) return false;
  std::set<std::string> seen{*verts.begin()};
  std::vector<std::string> todo{*verts.begin()};
  while (!todo.empty()) {
    std::string v = todo.back();
    todo.pop_back();
    for (const Edge& e : g.edges()) {
      if (!edge_ok(e)) continue;
      std::string other;
      if (e.tail == v)
        other = e.head;
      else if (e.head == v)
        other = e.tail;
      else
        continue;
      if (verts.count(other) && !seen.count(other)) {
        seen.insert(other);
        todo.push_back(other);
      }
    }
  }
  return seen.size() == verts.size();
}

}  // namespace

bool is_connected(const DirectedGraph& g) {
  return connected_subgraph(g, g.vertices(), [](const Edge&) { return true; });
}

bool is_totally_cyclic(const DirectedGraph& g) {
  // every edge lies on a directed cycle <=> each edge's endpoints are in a
  // common strongly connected component
  const auto& vs = g.vertices();
  std::map<std::string, std::set<std::string>> reach;
  for (const auto& v : vs) {
    std::set<std::string>& r = reach[v];
    std::vector<std::string> todo{v};
    r.insert(v);
    while (!todo.empty()) {
      std::string u = todo.back();
      todo.pop_back();
      for (const Edge& e : g.edges())
        if (e.tail == u && !r.count(e.head)) {
          r.insert(e.head);
          todo.push_back(e.head);
        }
    }
  }
  for (const Edge& e : g.edges())
    if (!reach[e.head].count(e.tail)) return false;
  return true;
}

bool three_edge_connected(const DirectedGraph& g) {
  if (g.vertices().size() < 2) return false;
  if (!is_connected(g)) return false;
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i; j < es.size(); ++j) {
      auto ok = [&](const Edge& e) { return e.label != es[i].label && e.label != es[j].label; };
      if (!connected_subgraph(g, g.vertices(), ok)) return false;
    }
  return true;
}

namespace {

// Signed sets from an edge subset that forms a single cycle: walk it both
// ways. Returns empty when the subset is not a simple cycle.
std::vector<SignedSet> cycle_signings(const std::vector<Edge>& sub) {
  std::map<std::string, std::vector<const Edge*>> at;
  for (const Edge& e : sub) {
    at[e.tail].push_back(&e);
    at[e.head].push_back(&e);
  }
  for (const auto& [v, es] : at)
    if (es.size() != 2) return {};
  // single component?
  std::set<std::string> verts;
  for (const auto& [v, es] : at) verts.insert(v);
  DirectedGraph tmp;
  for (const Edge& e : sub) tmp.add_edge(e.label, e.tail, e.head);
  if (!is_connected(tmp) || tmp.vertices().size() != sub.size()) return {};

  // walk the cycle starting anywhere
  std::set<int> pos, neg;
  const Edge* cur = &sub.front();
  std::string here = cur->tail;
  std::set<int> used;
  for (std::size_t step = 0; step < sub.size(); ++step) {
    // traverse cur from `here`
    if (cur->tail == here) {
      pos.insert(cur->label);
      here = cur->head;
    } else {
      neg.insert(cur->label);
      here = cur->tail;
    }
    used.insert(cur->label);
    if (step + 1 < sub.size()) {
      cur = nullptr;
      for (const Edge* e : at[here])
        if (!used.count(e->label)) cur = e;
      if (!cur) return {};
    }
  }
  SignedSet c(pos, neg);
  return {c, c.opposite()};
}

}  // namespace

std::vector<SignedSet> graph_circuits(const DirectedGraph& g) {
  if (!is_connected(g)) throw PreconditionError("graph must be connected");
  const auto& es = g.edges();
  const std::size_t n = es.size();
  if (n > 24) throw PreconditionError("circuit enumeration supports at most 24 edges");
  std::vector<SignedSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(es[i]);
    if (sub.size() < 3) continue;
    for (SignedSet& c : cycle_signings(sub)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedSet> graph_cocircuits(const DirectedGraph& g) {
  if (!is_connected(g)) throw PreconditionError("graph must be connected");
  std::vector<std::string> vs(g.vertices().begin(), g.vertices().end());
  const std::size_t n = vs.size();
  if (n > 20) throw PreconditionError("cut enumeration supports at most 20 vertices");
  std::vector<SignedSet> out;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::set<std::string> a;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) a.insert(vs[i]);
    std::set<std::string> b;
    for (const auto& v : vs)
      if (!a.count(v)) b.insert(v);
    auto all = [](const Edge&) { return true; };
    if (!connected_subgraph(g, a, all) || !connected_subgraph(g, b, all)) continue;
    std::set<int> into, outof;
    for (const Edge& e : g.edges()) {
      bool tail_in = a.count(e.tail) != 0, head_in = a.count(e.head) != 0;
      if (head_in && !tail_in) into.insert(e.label);
      if (tail_in && !head_in) outof.insert(e.label);
    }
    out.emplace_back(into, outof);  // edges entering A positive, as for a vertex
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SignedSet vertex_cocircuit(const DirectedGraph& g, const std::string& v) {
  if (!g.vertices().count(v)) throw PreconditionError("no vertex named " + v);
  std::set<int> in, out;
  for (const Edge& e : g.edges()) {
    if (e.head == v) in.insert(e.label);
    if (e.tail == v) out.insert(e.label);
  }
  return SignedSet(in, out);
}

std::string to_string(const DirectedGraph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) out << "edge " << e.label << " " << e.tail << " " << e.head << "\n";
  return out.str();
}

}  // namespace pappus
