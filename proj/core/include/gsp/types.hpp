#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsp {

/// Thrown when an input violates a documented invariant (bad weights,
/// malformed sequences, inconsistent probability rows, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Alternatives are integer ids in 1..N. Id 0 is the no-choice outcome; it is
/// a legal *result* of a choice but never a member of an assortment or a
/// preference sequence.
inline constexpr int kNoChoice = 0;

/// An offer set: a duplicate-free subset of {1..N}, stored in ascending order.
class Assortment {
 public:
  Assortment() = default;
  explicit Assortment(std::vector<int> members);
  static Assortment full(int universe_size);

  const std::vector<int>& members() const { return members_; }
  bool contains(int id) const;
  bool subset_of(const Assortment& other) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  int max_id() const { return members_.empty() ? 0 : members_.back(); }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  std::string to_string() const;  // "{1,2,3}"

  friend bool operator==(const Assortment&, const Assortment&) = default;
  friend auto operator<=>(const Assortment&, const Assortment&) = default;

 private:
  std::vector<int> members_;  // strictly ascending
};

/// All non-empty subsets of {1..N}, ordered by size then lexicographically.
std::vector<Assortment> all_assortments(int universe_size);

/// A consumer type (l, i): a duplicate-free preference sequence l plus a
/// position i. Offered S, the type picks the i-th entry (1-based) of l
/// restricted to S; position 0 means it always picks nothing.
struct ConsumerType {
  std::vector<int> sequence;
  int position = 0;

  /// Checks the structural invariants against a universe of size N.
  void validate(int universe_size) const;

  std::string to_string() const;  // "((3,2,1),2)"

  friend bool operator==(const ConsumerType&, const ConsumerType&) = default;
};

/// Canonical order: sequence length, then sequence content, then position.
/// This is also the order produced by enumerate_types.
bool type_less(const ConsumerType& a, const ConsumerType& b);

/// Rational types pick their top available alternative (position 1) or always
/// abstain (position 0). Everything else is irrational.
bool is_rational(const ConsumerType& t);

/// The subsequence of `sequence` containing exactly the entries in S, in the
/// original order.
std::vector<int> restrict_sequence(const std::vector<int>& sequence, const Assortment& s);

/// The alternative picked by type t from offer set S, or kNoChoice. Total and
/// deterministic: exactly one outcome for every (t, S).
int choose(const ConsumerType& t, const Assortment& s);

struct Atom {
  ConsumerType type;
  double weight = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finitely supported probability distribution over consumer types.
/// Construction merges duplicate types, drops zero-weight atoms, renormalizes
/// weight sums within 1e-6 of one and rejects anything further off.
class GspModel {
 public:
  GspModel(int universe_size, std::vector<Atom> atoms);

  int universe_size() const { return universe_size_; }
  const std::vector<Atom>& atoms() const { return atoms_; }  // canonical order
  std::size_t support_size() const { return atoms_.size(); }

  /// Total weight carried by irrational atoms.
  double irrational_mass() const;

  friend bool operator==(const GspModel&, const GspModel&) = default;

 private:
  int universe_size_ = 0;
  std::vector<Atom> atoms_;
};

/// P(x, S) under model m: the weighted share of types that pick x from S.
/// x must be a member of S or kNoChoice.
double choice_probability(const GspModel& m, int x, const Assortment& s);

/// A system of choice probabilities, one row per assortment. Rows keep the
/// order in which they were supplied.
class ChoiceTable {
 public:
  struct Row {
    Assortment assortment;
    std::vector<double> shares;  // aligned with assortment.members()
    double no_choice = 0.0;

    friend bool operator==(const Row&, const Row&) = default;
  };

  ChoiceTable(int universe_size, std::vector<Row> rows);

  int universe_size() const { return universe_size_; }
  const std::vector<Row>& rows() const { return rows_; }

  const Row* find(const Assortment& s) const;
  bool has_row(const Assortment& s) const { return find(s) != nullptr; }

  /// P(x, S) for a row present in the table; 0 for x in the universe but not
  /// in S. Throws if the row is missing or x is out of range.
  double prob(int x, const Assortment& s) const;

  /// True when every non-empty subset of {1..N} has a row.
  bool complete() const;

  friend bool operator==(const ChoiceTable&, const ChoiceTable&) = default;

 private:
  int universe_size_ = 0;
  std::vector<Row> rows_;
};

/// Evaluates m on every assortment in the list (pointwise choice_probability).
ChoiceTable choice_table(const GspModel& m, const std::vector<Assortment>& assortments);

/// Every consumer type (l, i) over 1..N with |l| <= max_seq_len (default N):
/// sequences ordered by length then lexicographically, positions 0..|l|
/// ascending within each sequence.
std::vector<ConsumerType> enumerate_types(int universe_size,
                                          std::optional<int> max_seq_len = std::nullopt);

/// Number of types enumerate_types(N) yields, via the closed-form count.
long long count_types(int universe_size, std::optional<int> max_seq_len = std::nullopt);

/// A strict ranking over {1..N} with the no-choice option 0 inserted at some
/// cutoff; alternatives listed after 0 are never chosen.
struct RankedList {
  std::vector<int> order;  // permutation of {0, 1, ..., N}
  double weight = 0.0;
};

/// Embeds a distribution over rankings (a RUM in ranked-list form) as a
/// rational-only model: the prefix before 0 becomes (l, 1); a ranking that
/// starts with 0 becomes (l, 0) over the full remaining sequence.
GspModel ranked_list_to_gsp(const std::vector<RankedList>& rankings);

}  // namespace gsp
