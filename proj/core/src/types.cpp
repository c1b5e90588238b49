#include "gsp/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace gsp {

namespace {

constexpr double kWeightSumSlack = 1e-6;   // renormalize within this of 1
constexpr double kWeightSumTol = 1e-9;     // accept as-is within this of 1
constexpr double kRowSumTol = 1e-9;

std::string join_ints(const std::vector<int>& v, char open, char close) {
  std::ostringstream out;
  out << open;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  out << close;
  return out.str();
}

}  // namespace

Assortment::Assortment(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1)
      throw ValidationError("assortment member " + std::to_string(members_[i]) +
                            " is not a positive alternative id");
    if (i > 0 && members_[i] == members_[i - 1])
      throw ValidationError("assortment has duplicate member " + std::to_string(members_[i]));
  }
}

Assortment Assortment::full(int universe_size) {
  std::vector<int> ids(static_cast<std::size_t>(universe_size));
  for (int i = 0; i < universe_size; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return Assortment(std::move(ids));
}

bool Assortment::contains(int id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

bool Assortment::subset_of(const Assortment& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::string Assortment::to_string() const { return join_ints(members_, '{', '}'); }

std::vector<Assortment> all_assortments(int universe_size) {
  if (universe_size < 1) throw ValidationError("universe size must be at least 1");
  if (universe_size > 25) throw ValidationError("universe too large to enumerate all subsets");
  std::vector<Assortment> out;
  out.reserve((1u << universe_size) - 1);
  // By size, then lexicographically: grow each prefix with larger ids only.
  std::vector<int> current;
  for (int size = 1; size <= universe_size; ++size) {
    current.clear();
    auto extend = [&](auto&& self, int next_min) -> void {
      if (static_cast<int>(current.size()) == size) {
        out.emplace_back(current);
        return;
      }
      for (int id = next_min; id <= universe_size; ++id) {
        current.push_back(id);
        self(self, id + 1);
        current.pop_back();
      }
    };
    extend(extend, 1);
  }
  return out;
}

void ConsumerType::validate(int universe_size) const {
  if (sequence.empty()) throw ValidationError("consumer type has an empty sequence");
  if (static_cast<int>(sequence.size()) > universe_size)
    throw ValidationError("consumer type sequence longer than the universe");
  std::vector<int> seen(static_cast<std::size_t>(universe_size) + 1, 0);
  for (int id : sequence) {
    if (id < 1 || id > universe_size)
      throw ValidationError("sequence entry " + std::to_string(id) + " outside 1.." +
                            std::to_string(universe_size));
    if (seen[static_cast<std::size_t>(id)]++)
      throw ValidationError("sequence repeats alternative " + std::to_string(id));
  }
  if (position < 0 || position > static_cast<int>(sequence.size()))
    throw ValidationError("position " + std::to_string(position) +
                          " outside 0..|sequence| for sequence " + join_ints(sequence, '(', ')'));
}

std::string ConsumerType::to_string() const {
  return "(" + join_ints(sequence, '(', ')') + "," + std::to_string(position) + ")";
}

bool type_less(const ConsumerType& a, const ConsumerType& b) {
  if (a.sequence.size() != b.sequence.size()) return a.sequence.size() < b.sequence.size();
  if (a.sequence != b.sequence) return a.sequence < b.sequence;
  return a.position < b.position;
}

bool is_rational(const ConsumerType& t) { return t.position <= 1; }

std::vector<int> restrict_sequence(const std::vector<int>& sequence, const Assortment& s) {
  std::vector<int> out;
  out.reserve(std::min(sequence.size(), s.size()));
  for (int id : sequence)
    if (s.contains(id)) out.push_back(id);
  return out;
}

int choose(const ConsumerType& t, const Assortment& s) {
  if (t.position == 0) return kNoChoice;
  int seen = 0;
  for (int id : t.sequence) {
    if (!s.contains(id)) continue;
    if (++seen == t.position) return id;
  }
  return kNoChoice;  // restriction shorter than the position
}

GspModel::GspModel(int universe_size, std::vector<Atom> atoms) : universe_size_(universe_size) {
  if (universe_size_ < 1) throw ValidationError("universe size must be at least 1");
  if (atoms.empty()) throw ValidationError("model needs at least one atom");

  std::map<std::pair<std::vector<int>, int>, double> merged;
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    try {
      a.type.validate(universe_size_);
    } catch (const ValidationError& e) {
      throw ValidationError("atom " + std::to_string(i) + ": " + e.what());
    }
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
      throw ValidationError("atom " + std::to_string(i) + " (" + a.type.to_string() +
                            ") has weight " + std::to_string(a.weight) +
                            "; weights must be finite and non-negative");
    sum += a.weight;
    if (a.weight > 0.0) merged[{a.type.sequence, a.type.position}] += a.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumSlack)
    throw ValidationError("atom weights sum to " + std::to_string(sum) +
                          ", further than 1e-6 from 1");
  const double scale = std::abs(sum - 1.0) <= kWeightSumTol ? 1.0 : 1.0 / sum;
  if (merged.empty()) throw ValidationError("all atoms have zero weight");

  atoms_.reserve(merged.size());
  for (const auto& [key, weight] : merged)
    atoms_.push_back(Atom{ConsumerType{key.first, key.second}, weight * scale});
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return type_less(a.type, b.type); });
}

double GspModel::irrational_mass() const {
  double mass = 0.0;
  for (const Atom& a : atoms_)
    if (!is_rational(a.type)) mass += a.weight;
  return mass;
}

double choice_probability(const GspModel& m, int x, const Assortment& s) {
  if (x != kNoChoice && !s.contains(x))
    throw ValidationError("choice_probability: alternative " + std::to_string(x) +
                          " is not in " + s.to_string() + " or 0");
  if (s.max_id() > m.universe_size())
    throw ValidationError("assortment " + s.to_string() + " exceeds universe size " +
                          std::to_string(m.universe_size()));
  double p = 0.0;
  for (const Atom& a : m.atoms())
    if (choose(a.type, s) == x) p += a.weight;
  return p;
}

ChoiceTable::ChoiceTable(int universe_size, std::vector<Row> rows)
    : universe_size_(universe_size), rows_(std::move(rows)) {
  if (universe_size_ < 1) throw ValidationError("universe size must be at least 1");
  for (const Row& row : rows_) {
    const std::string where = "row " + row.assortment.to_string();
    if (row.assortment.empty()) throw ValidationError(where + ": empty assortment");
    if (row.assortment.max_id() > universe_size_)
      throw ValidationError(where + ": member outside 1.." + std::to_string(universe_size_));
    if (row.shares.size() != row.assortment.size())
      throw ValidationError(where + ": expected " + std::to_string(row.assortment.size()) +
                            " shares, got " + std::to_string(row.shares.size()));
    double sum = 0.0;
    for (double p : row.shares) {
      if (!std::isfinite(p) || p < -kRowSumTol || p > 1.0 + kRowSumTol)
        throw ValidationError(where + ": share " + std::to_string(p) + " outside [0,1]");
      sum += p;
    }
    if (sum > 1.0 + kRowSumTol)
      throw ValidationError(where + ": shares sum to " + std::to_string(sum) + " > 1");
    if (!std::isfinite(row.no_choice) || std::abs(row.no_choice - (1.0 - sum)) > kRowSumTol)
      throw ValidationError(where + ": no-choice share " + std::to_string(row.no_choice) +
                            " is not 1 minus the member shares");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = i + 1; j < rows_.size(); ++j)
      if (rows_[i].assortment == rows_[j].assortment)
        throw ValidationError("duplicate row for " + rows_[i].assortment.to_string());
}

const ChoiceTable::Row* ChoiceTable::find(const Assortment& s) const {
  for (const Row& row : rows_)
    if (row.assortment == s) return &row;
  return nullptr;
}

double ChoiceTable::prob(int x, const Assortment& s) const {
  const Row* row = find(s);
  if (row == nullptr) throw ValidationError("table has no row for " + s.to_string());
  if (x == kNoChoice) return row->no_choice;
  if (x < 1 || x > universe_size_)
    throw ValidationError("alternative " + std::to_string(x) + " outside the universe");
  const auto& members = row->assortment.members();
  auto it = std::lower_bound(members.begin(), members.end(), x);
  if (it == members.end() || *it != x) return 0.0;  // x not offered
  return row->shares[static_cast<std::size_t>(it - members.begin())];
}

bool ChoiceTable::complete() const {
  if (universe_size_ > 25) return false;
  const std::size_t expected = (std::size_t{1} << universe_size_) - 1;
  if (rows_.size() < expected) return false;
  for (const Assortment& s : all_assortments(universe_size_))
    if (!has_row(s)) return false;
  return true;
}

ChoiceTable choice_table(const GspModel& m, const std::vector<Assortment>& assortments) {
  if (assortments.empty()) throw ValidationError("choice_table needs at least one assortment");
  std::vector<ChoiceTable::Row> rows;
  rows.reserve(assortments.size());
  for (const Assortment& s : assortments) {
    ChoiceTable::Row row;
    row.assortment = s;
    row.shares.reserve(s.size());
    double sum = 0.0;
    for (int x : s) {
      const double p = choice_probability(m, x, s);
      row.shares.push_back(p);
      sum += p;
    }
    row.no_choice = 1.0 - sum;
    rows.push_back(std::move(row));
  }
  return ChoiceTable(m.universe_size(), std::move(rows));
}

std::vector<ConsumerType> enumerate_types(int universe_size, std::optional<int> max_seq_len) {
  if (universe_size < 1) throw ValidationError("universe size must be at least 1");
  const int cap = max_seq_len.value_or(universe_size);
  if (cap < 1 || cap > universe_size)
    throw ValidationError("sequence length cap must lie in 1..universe size");

  std::vector<ConsumerType> out;
  out.reserve(static_cast<std::size_t>(count_types(universe_size, cap)));
  std::vector<int> current;
  std::vector<bool> used(static_cast<std::size_t>(universe_size) + 1, false);
  auto extend = [&](auto&& self, int target_len) -> void {
    if (static_cast<int>(current.size()) == target_len) {
      for (int pos = 0; pos <= target_len; ++pos) out.push_back(ConsumerType{current, pos});
      return;
    }
    for (int id = 1; id <= universe_size; ++id) {
      if (used[static_cast<std::size_t>(id)]) continue;
      used[static_cast<std::size_t>(id)] = true;
      current.push_back(id);
      self(self, target_len);
      current.pop_back();
      used[static_cast<std::size_t>(id)] = false;
    }
  };
  for (int len = 1; len <= cap; ++len) extend(extend, len);
  return out;
}

long long count_types(int universe_size, std::optional<int> max_seq_len) {
  if (universe_size < 1) throw ValidationError("universe size must be at least 1");
  const int cap = max_seq_len.value_or(universe_size);
  long long total = 0;
  long long arrangements = 1;  // N! / (N-k)!
  for (int k = 1; k <= cap; ++k) {
    arrangements *= universe_size - k + 1;
    total += arrangements * (k + 1);
  }
  return total;
}

GspModel ranked_list_to_gsp(const std::vector<RankedList>& rankings) {
  if (rankings.empty()) throw ValidationError("need at least one ranking");
  const int universe_size = static_cast<int>(rankings.front().order.size()) - 1;
  if (universe_size < 1) throw ValidationError("rankings must cover at least one alternative");

  std::vector<Atom> atoms;
  atoms.reserve(rankings.size());
  for (std::size_t r = 0; r < rankings.size(); ++r) {
    const auto& order = rankings[r].order;
    const std::string where = "ranking " + std::to_string(r);
    if (static_cast<int>(order.size()) != universe_size + 1)
      throw ValidationError(where + ": rankings must all have the same length");
    std::vector<bool> seen(static_cast<std::size_t>(universe_size) + 1, false);
    for (int id : order) {
      if (id < 0 || id > universe_size || seen[static_cast<std::size_t>(id)])
        throw ValidationError(where + " is not a permutation of {0.." +
                              std::to_string(universe_size) + "}");
      seen[static_cast<std::size_t>(id)] = true;
    }
    const auto zero = std::find(order.begin(), order.end(), kNoChoice);
    Atom atom;
    if (zero == order.begin()) {
      atom.type.sequence.assign(order.begin() + 1, order.end());
      atom.type.position = 0;
    } else {
      atom.type.sequence.assign(order.begin(), zero);
      atom.type.position = 1;
    }
    atom.weight = rankings[r].weight;
    atoms.push_back(std::move(atom));
  }
  return GspModel(universe_size, std::move(atoms));
}

}  // namespace gsp
