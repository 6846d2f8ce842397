#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itl/formula.hpp"

namespace itl {

enum class FrameClass { Dynamic, Persistent, Classical };

std::string frame_class_name(FrameClass c);
std::optional<FrameClass> frame_class_from_name(std::string_view name);

enum class ModelErrorKind {
  Syntax,
  UnknownWorld,
  SuccNotTotal,
  SuccDoublyDefined,
  Antisymmetry,
  Confluence,
  Monotonicity,
  Transitivity,  // only reachable through hand-built relations
};

struct ModelError : std::runtime_error {
  ModelError(ModelErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  ModelErrorKind kind;
};

/// Raw, unvalidated model description, as read from a model file or built
/// by hand. Order pairs are generators; the closure is taken on validation.
struct ModelData {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::string>> order_pairs;
  std::vector<std::pair<std::string, std::string>> succ_pairs;
  std::map<std::string, std::vector<std::string>> valuation;
};

/// Finite intuitionistic dynamic model. The order is stored
/// reflexive-transitively closed, so `leq` is a constant-time lookup.
class DynamicModel {
 public:
  /// Full validation: partial order, total succ, forward confluence,
  /// monotone valuation. Throws ModelError with a distinct kind per failure.
  static DynamicModel validated(const ModelData& data);

  /// Poset-level validation only (partial order, total succ, monotone
  /// valuation); confluence is not required. Used for witness structures
  /// that are deliberately non-confluent.
  static DynamicModel poset_only(const ModelData& data);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& world_name(int w) const { return names_.at(static_cast<std::size_t>(w)); }
  const std::vector<std::string>& world_names() const { return names_; }
  std::optional<int> world_index(std::string_view name) const;

  bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int succ(int w) const { return succ_.at(static_cast<std::size_t>(w)); }
  const std::vector<std::string>& atoms(int w) const { return val_.at(static_cast<std::size_t>(w)); }
  bool has_atom(int w, std::string_view atom) const;

  bool order_is_identity() const;

  /// Internal matrices, useful for frame reports and enumeration oracles.
  const std::vector<std::vector<bool>>& order_matrix() const { return leq_; }
  const std::vector<int>& succ_map() const { return succ_; }

 private:
  friend class ModelBuilder;
  DynamicModel() = default;

  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<int> succ_;
  std::vector<std::vector<std::string>> val_;
};

/// Index-level construction used by the enumerator and by internal
/// transformations; performs the same checks as DynamicModel::validated
/// (or poset_only when `require_confluence` is false).
class ModelBuilder {
 public:
  ModelBuilder(int world_count, std::vector<std::string> names);

  void set_leq(int a, int b) { leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true; }
  void set_succ(int w, int v) { succ_[static_cast<std::size_t>(w)] = v; }
  void add_atom(int w, const std::string& atom);

  /// `leq` must already be reflexive-transitively closed.
  DynamicModel finish(bool require_confluence = true) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<int> succ_;
  std::vector<std::vector<std::string>> val_;
};

struct FrameReport {
  bool is_partial_order = true;
  bool is_confluent = true;
  bool is_backward_confluent = true;
  bool is_monotone = true;
  // First witness of each failure, in world-enumeration order.
  std::optional<std::pair<std::string, std::string>> order_witness;
  std::optional<std::pair<std::string, std::string>> confluence_witness;
  std::optional<std::pair<std::string, std::string>> backward_witness;
  std::optional<std::pair<std::string, std::string>> monotonicity_witness;

  bool is_persistent() const { return is_confluent && is_backward_confluent; }
  bool satisfies(FrameClass c, bool identity_order) const;
};

/// Model file format (line-based, `#` comments):
///   model
///   worlds <id>+
///   order <a> <b>     (generator pair, zero or more)
///   succ <a> <b>      (exactly one per world)
///   val <w> <atom>*   (omitted worlds get the empty valuation)
DynamicModel load_model(std::string_view text);
ModelData parse_model_data(std::string_view text);

/// Canonical text: worlds as declared, Hasse generators sorted, one succ
/// line per world in world order, non-empty valuations in world order.
std::string save_model(const DynamicModel& m);

/// Exhaustive frame diagnosis. Never throws for frame-condition failures;
/// throws ModelError only if the data is not even a frame (unknown worlds,
/// non-total succ).
FrameReport check_frame(const ModelData& data);
FrameReport check_frame(const DynamicModel& m);

/// Witness for the failure of upward closure on a non-confluent frame:
/// valuation V(u) = {p} iff succ(w0) <= u, and the formula X p, which then
/// holds at w0 but not at v0 although w0 <= v0.
struct ConfluenceWitness {
  DynamicModel model;  // the input frame equipped with the witness valuation
  Formula formula;
  int w0;
  int v0;
};
ConfluenceWitness confluence_witness(const DynamicModel& frame, int w0, int v0);

struct EnumerationOptions {
  std::vector<std::string> atoms;
  FrameClass frame = FrameClass::Dynamic;
  bool prune_isomorphic = false;
};

/// Visits every labeled model with 1..max_worlds worlds (named "1".."n")
/// satisfying the frame class and valuation monotonicity, in a fixed
/// deterministic order. The visitor returns false to stop early.
void enumerate_models(int max_worlds, const EnumerationOptions& options,
                      const std::function<bool(const DynamicModel&)>& visit);

/// All partial orders on n labeled points, as closed relation matrices,
/// in deterministic order.
std::vector<std::vector<std::vector<bool>>> enumerate_partial_orders(int n);

}  // namespace itl
