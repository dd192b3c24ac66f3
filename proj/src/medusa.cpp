#include "kinalpha/medusa.hpp"

#include <algorithm>

namespace kinalpha {

const char* to_string(Origin o) {
  switch (o) {
    case Origin::Initial:
      return "INITIAL";
    case Origin::Radius:
      return "RADIUS";
    case Origin::FlipFill:
      return "FLIP_FILL";
    case Origin::InsertFill:
      return "INSERT_FILL";
    case Origin::DeleteFill:
      return "DELETE_FILL";
    case Origin::Final:
      return "FINAL";
  }
  return "?";
}

namespace {

KernelError violation(const std::string& what) { return KernelError("InvariantViolation", what); }

bool is_fill(Origin o) { return o == Origin::FlipFill || o == Origin::InsertFill || o == Origin::DeleteFill; }

}  // namespace

void MedusaBuilder::start(const std::vector<VertexId>& vertices, const std::set<Simplex>& complex,
                          const AlgebraicReal& t) {
  for (VertexId v : vertices) active_[{v}] = Active{t, true};
  for (const auto& s : complex) active_[s] = Active{t, true};
}

void MedusaBuilder::on_alpha_add(const Simplex& s, const AlgebraicReal& t) {
  if (active_.count(s)) throw violation("simplex " + describe(s) + " is already active");
  active_[s] = Active{t, false};
}

void MedusaBuilder::on_alpha_remove(const Simplex& s, const AlgebraicReal& t) { close(s, t, false); }

void MedusaBuilder::close(const Simplex& s, const AlgebraicReal& t, bool final) {
  auto it = active_.find(s);
  if (it == active_.end()) throw violation("simplex " + describe(s) + " is not active");
  const Origin o = final ? Origin::Final : (it->second.initial ? Origin::Initial : Origin::Radius);
  output_.push_back(MedusaCell{s, it->second.birth, t, o});
  active_.erase(it);
}

void MedusaBuilder::fill(Simplex ids, const AlgebraicReal& t, Origin origin) {
  std::sort(ids.begin(), ids.end());
  output_.push_back(MedusaCell{std::move(ids), t, t, origin});
}

void MedusaBuilder::apply(const AlphaDelta& d, const AlgebraicReal& t) {
  for (const auto& s : d.removed) on_alpha_remove(s, t);
  for (const auto& s : d.added) on_alpha_add(s, t);
}

void MedusaBuilder::on_radius(const AlphaDelta& d, const AlgebraicReal& t) { apply(d, t); }

void MedusaBuilder::on_flip(const FlipResult& f, const AlphaDelta& d, const AlgebraicReal& t) {
  if (d.all_short) fill(f.five, t, Origin::FlipFill);
  apply(d, t);
}

void MedusaBuilder::on_insert(VertexId u, const AlphaDelta& d, const AlgebraicReal& t) {
  for (const auto& s : d.removed) {
    Simplex j = s;
    j.push_back(u);
    fill(std::move(j), t, Origin::InsertFill);
  }
  apply(d, t);
  on_alpha_add({u}, t);
}

void MedusaBuilder::on_delete(VertexId v, const AlphaDelta& d, const AlgebraicReal& t) {
  for (const auto& s : d.added) {
    Simplex j = s;
    j.push_back(v);
    fill(std::move(j), t, Origin::DeleteFill);
  }
  apply(d, t);
  close({v}, t, false);
}

void MedusaBuilder::finalize(const AlgebraicReal& t) {
  while (!active_.empty()) close(active_.begin()->first, t, true);
  std::stable_sort(output_.begin(), output_.end(), [](const MedusaCell& a, const MedusaCell& b) {
    const Order o = compare(a.birth, b.birth);
    if (o != Order::EQ) return o == Order::LT;
    return a.ids < b.ids;
  });
}

std::set<Simplex> MedusaBuilder::active_simplices() const {
  std::set<Simplex> out;
  for (const auto& [s, a] : active_) out.insert(s);
  return out;
}

void check_medusa(const std::vector<MedusaCell>& cells) {
  std::map<Simplex, std::vector<const MedusaCell*>> copies;
  for (const auto& c : cells) {
    if (c.death < c.birth) throw violation("cell " + describe(c.ids) + " dies before it is born");
    if (is_fill(c.origin) && !(c.birth == c.death)) throw violation("fill cell " + describe(c.ids) + " is not an instant");
    if (c.origin == Origin::FlipFill && c.ids.size() != 5)
      throw violation("flip fill " + describe(c.ids) + " does not have five vertices");
    if (!std::is_sorted(c.ids.begin(), c.ids.end()) || std::adjacent_find(c.ids.begin(), c.ids.end()) != c.ids.end())
      throw violation("cell " + describe(c.ids) + " has unsorted or repeated ids");
    copies[c.ids].push_back(&c);
  }
  for (auto& [ids, list] : copies) {
    std::sort(list.begin(), list.end(), [](const MedusaCell* a, const MedusaCell* b) { return a->birth < b->birth; });
    for (std::size_t i = 1; i < list.size(); ++i)
      if (!(list[i - 1]->death < list[i]->birth))
        throw violation("copies of " + describe(ids) + " have overlapping lifetimes");
  }
}

}  // namespace kinalpha
