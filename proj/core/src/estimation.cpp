#include "gsp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gsp/nnls.hpp"

namespace gsp::estimation {

namespace {
constexpr double kShareSumTol = 1e-6;
constexpr double kPruneTol = 1e-6;
}  // namespace

ChoiceDataset::ChoiceDataset(int universe_size, std::vector<Observation> observations)
    : universe_size_(universe_size), observations_(std::move(observations)) {
  if (universe_size_ < 1) throw ValidationError("universe size must be at least 1");
  if (observations_.empty()) throw ValidationError("dataset has no observations");
  for (const Observation& obs : observations_) {
    const std::string where = "observation " + obs.assortment.to_string();
    if (obs.assortment.empty()) throw ValidationError(where + ": empty assortment");
    if (obs.assortment.max_id() > universe_size_)
      throw ValidationError(where + ": member outside 1.." + std::to_string(universe_size_));
    if (obs.shares.size() != obs.assortment.size())
      throw ValidationError(where + ": expected " + std::to_string(obs.assortment.size()) +
                            " shares, got " + std::to_string(obs.shares.size()));
    double sum = obs.no_choice;
    for (double f : obs.shares) {
      if (!std::isfinite(f) || f < -1e-9 || f > 1.0 + 1e-9)
        throw ValidationError(where + ": share " + std::to_string(f) + " outside [0,1]");
      sum += f;
    }
    if (!std::isfinite(obs.no_choice) || obs.no_choice < -1e-9 || obs.no_choice > 1.0 + 1e-9)
      throw ValidationError(where + ": no-choice share outside [0,1]");
    if (std::abs(sum - 1.0) > kShareSumTol)
      throw ValidationError(where + ": shares sum to " + std::to_string(sum) + ", not 1");
    if (obs.sample_size && *obs.sample_size < 1)
      throw ValidationError(where + ": sample size must be positive");
  }
  for (std::size_t i = 0; i < observations_.size(); ++i)
    for (std::size_t j = i + 1; j < observations_.size(); ++j)
      if (observations_[i].assortment == observations_[j].assortment)
        throw ValidationError("duplicate observation for " +
                              observations_[i].assortment.to_string());
}

Eigen::VectorXd ChoiceDataset::share_vector() const {
  Eigen::Index rows = 0;
  for (const Observation& obs : observations_) rows += static_cast<Eigen::Index>(obs.shares.size());
  Eigen::VectorXd y(rows);
  Eigen::Index r = 0;
  for (const Observation& obs : observations_)
    for (double f : obs.shares) y(r++) = f;
  return y;
}

DesignMatrix build_design_matrix(const std::vector<ConsumerType>& types,
                                 const ChoiceDataset& dataset, bool merge_duplicates) {
  if (types.empty()) throw ValidationError("design matrix needs at least one type");
  for (std::size_t t = 0; t < types.size(); ++t) {
    try {
      types[t].validate(dataset.universe_size());
    } catch (const ValidationError& e) {
      throw ValidationError("type " + std::to_string(t) + ": " + e.what());
    }
  }

  // Each type's choice per observation pins down its column; identical
  // columns collapse onto the first type that produced them.
  std::vector<std::vector<int>> behaviors(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    behaviors[t].reserve(dataset.observations().size());
    for (const Observation& obs : dataset.observations())
      behaviors[t].push_back(choose(types[t], obs.assortment));
  }
  std::map<std::vector<int>, std::size_t> behavior_to_column;
  std::vector<std::size_t> representative;
  std::vector<int> multiplicity;
  for (std::size_t t = 0; t < types.size(); ++t) {
    if (!merge_duplicates) {
      representative.push_back(t);
      multiplicity.push_back(1);
      continue;
    }
    auto [it, inserted] = behavior_to_column.emplace(behaviors[t], representative.size());
    if (inserted) {
      representative.push_back(t);
      multiplicity.push_back(1);
    } else {
      ++multiplicity[it->second];
    }
  }

  DesignMatrix design;
  for (std::size_t obs = 0; obs < dataset.observations().size(); ++obs)
    for (int x : dataset.observations()[obs].assortment)
      design.row_keys.push_back({x, obs});

  design.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(design.row_keys.size()),
                                        static_cast<Eigen::Index>(representative.size()));
  for (std::size_t c = 0; c < representative.size(); ++c) {
    const std::vector<int>& behavior = behaviors[representative[c]];
    Eigen::Index row = 0;
    for (std::size_t obs = 0; obs < dataset.observations().size(); ++obs) {
      for (int x : dataset.observations()[obs].assortment) {
        if (behavior[obs] == x) design.matrix(row, static_cast<Eigen::Index>(c)) = 1.0;
        ++row;
      }
    }
    design.columns.push_back(DesignColumn{types[representative[c]], multiplicity[c],
                                          is_rational(types[representative[c]])});
  }
  return design;
}

FitResult fit(const ChoiceDataset& dataset, const FitConfig& config) {
  if (config.max_atoms < 1) throw ValidationError("fit: atom budget must be at least 1");
  if (config.irrational_penalty < 0.0) throw ValidationError("fit: penalty must be >= 0");

  std::vector<ConsumerType> types;
  if (config.custom_types) {
    types = *config.custom_types;
  } else {
    if (!config.max_seq_len && dataset.universe_size() > config.universe_cap)
      throw ValidationError("fit: universe size " + std::to_string(dataset.universe_size()) +
                            " exceeds the full-enumeration cap " +
                            std::to_string(config.universe_cap) +
                            "; cap the sequence length or supply custom types");
    types = enumerate_types(dataset.universe_size(), config.max_seq_len);
  }

  const DesignMatrix design = build_design_matrix(types, dataset);
  const Eigen::VectorXd y = dataset.share_vector();

  std::vector<double> penalties(design.columns.size(), 0.0);
  if (config.irrational_penalty > 0.0)
    for (std::size_t c = 0; c < design.columns.size(); ++c)
      if (!design.columns[c].rational) penalties[c] = config.irrational_penalty;

  solver::NnlsOptions options;
  options.max_atoms = config.max_atoms;
  options.tol = config.tol;
  options.column_penalty = config.irrational_penalty > 0.0 ? &penalties : nullptr;
  const solver::NnlsResult nnls = solver::nnls_simplex(design.matrix, y, options);

  // Weights below the pruning threshold are dropped and the rest re-projected
  // onto the simplex; the reported residual belongs to the pruned model.
  std::vector<Atom> atoms;
  for (std::size_t c = 0; c < design.columns.size(); ++c) {
    const double w = nnls.weights(static_cast<Eigen::Index>(c));
    if (w >= kPruneTol) atoms.push_back(Atom{design.columns[c].representative, w});
  }
  if (atoms.empty()) throw ValidationError("fit: no atom weight survived pruning");
  FitResult result{GspModel(dataset.universe_size(), std::move(atoms)), 0.0, {}, 0.0,
                   nnls.iterations};

  Eigen::VectorXd fitted(y.size());
  Eigen::Index r = 0;
  for (const Observation& obs : dataset.observations())
    for (int x : obs.assortment)
      fitted(r++) = choice_probability(result.model, x, obs.assortment);
  const Eigen::VectorXd residual = fitted - y;
  result.residual_norm = residual.norm();
  result.row_residuals.assign(residual.data(), residual.data() + residual.size());
  result.irrational_mass = result.model.irrational_mass();
  return result;
}

double loss(const GspModel& model, const ChoiceDataset& dataset, const FitConfig& config) {
  if (model.universe_size() != dataset.universe_size())
    throw ValidationError("loss: model and dataset universes differ");
  double sq = 0.0;
  for (const Observation& obs : dataset.observations()) {
    for (std::size_t k = 0; k < obs.assortment.size(); ++k) {
      const double p = choice_probability(model, obs.assortment.members()[k], obs.assortment);
      sq += (p - obs.shares[k]) * (p - obs.shares[k]);
    }
  }
  long support = 0;
  long irrational_support = 0;
  for (const Atom& a : model.atoms()) {
    ++support;
    if (!is_rational(a.type)) ++irrational_support;
  }
  return std::sqrt(sq) + config.complexity_penalty * static_cast<double>(support) +
         config.irrational_penalty * static_cast<double>(irrational_support);
}

}  // namespace gsp::estimation
