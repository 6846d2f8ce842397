#include "itl/model.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace itl {

std::string frame_class_name(FrameClass c) {
  switch (c) {
    case FrameClass::Dynamic:
      return "dynamic";
    case FrameClass::Persistent:
      return "persistent";
    case FrameClass::Classical:
      return "classical";
  }
  return "?";
}

std::optional<FrameClass> frame_class_from_name(std::string_view name) {
  if (name == "dynamic") return FrameClass::Dynamic;
  if (name == "persistent") return FrameClass::Persistent;
  if (name == "classical") return FrameClass::Classical;
  return std::nullopt;
}

namespace {

void close_reflexive_transitive(std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[k][j]) leq[i][j] = true;
      }
    }
  }
}

struct ResolvedData {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<std::vector<bool>> leq;  // closed
  std::vector<int> succ;               // -1 where undefined
  std::vector<std::vector<std::string>> val;
};

int resolve_world(const ResolvedData& r, const std::string& name,
                  const char* context) {
  auto it = r.index.find(name);
  if (it == r.index.end()) {
    throw ModelError(ModelErrorKind::UnknownWorld,
                     std::string("unknown world '") + name + "' in " + context);
  }
  return it->second;
}

ResolvedData resolve(const ModelData& data) {
  ResolvedData r;
  r.names = data.worlds;
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    if (!r.index.emplace(r.names[i], static_cast<int>(i)).second) {
      throw ModelError(ModelErrorKind::Syntax,
                       "world '" + r.names[i] + "' declared twice");
    }
  }
  const std::size_t n = r.names.size();
  r.leq.assign(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : data.order_pairs) {
    r.leq[static_cast<std::size_t>(resolve_world(r, a, "order"))]
         [static_cast<std::size_t>(resolve_world(r, b, "order"))] = true;
  }
  close_reflexive_transitive(r.leq);
  r.succ.assign(n, -1);
  for (const auto& [a, b] : data.succ_pairs) {
    const int ia = resolve_world(r, a, "succ");
    const int ib = resolve_world(r, b, "succ");
    if (r.succ[static_cast<std::size_t>(ia)] != -1) {
      throw ModelError(ModelErrorKind::SuccDoublyDefined,
                       "succ of '" + a + "' defined twice");
    }
    r.succ[static_cast<std::size_t>(ia)] = ib;
  }
  r.val.assign(n, {});
  for (const auto& [w, atoms] : data.valuation) {
    auto& slot = r.val[static_cast<std::size_t>(resolve_world(r, w, "val"))];
    slot = atoms;
    std::sort(slot.begin(), slot.end());
    slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
  }
  return r;
}

std::optional<std::pair<int, int>> find_antisymmetry_violation(
    const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) {
        return std::make_pair(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_confluence_violation(
    const std::vector<std::vector<bool>>& leq, const std::vector<int>& succ) {
  const std::size_t n = leq.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (leq[a][b] &&
          !leq[static_cast<std::size_t>(succ[a])][static_cast<std::size_t>(succ[b])]) {
        return std::make_pair(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_backward_violation(
    const std::vector<std::vector<bool>>& leq, const std::vector<int>& succ) {
  const std::size_t n = leq.size();
  // Whenever v >= succ(w), some u >= w must have succ(u) = v.
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!leq[static_cast<std::size_t>(succ[w])][v]) continue;
      bool found = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (leq[w][u] && succ[u] == static_cast<int>(v)) {
          found = true;
          break;
        }
      }
      if (!found) return std::make_pair(static_cast<int>(w), static_cast<int>(v));
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_monotonicity_violation(
    const std::vector<std::vector<bool>>& leq,
    const std::vector<std::vector<std::string>>& val) {
  const std::size_t n = leq.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!leq[a][b] || a == b) continue;
      if (!std::includes(val[b].begin(), val[b].end(), val[a].begin(),
                         val[a].end())) {
        return std::make_pair(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return std::nullopt;
}

DynamicModel build_checked(const ResolvedData& r, bool require_confluence) {
  const std::size_t n = r.names.size();
  if (n == 0) {
    throw ModelError(ModelErrorKind::Syntax, "model has no worlds");
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (r.succ[w] < 0) {
      throw ModelError(ModelErrorKind::SuccNotTotal,
                       "succ of '" + r.names[w] + "' is undefined");
    }
  }
  if (auto bad = find_antisymmetry_violation(r.leq)) {
    throw ModelError(ModelErrorKind::Antisymmetry,
                     "antisymmetry violation: '" +
                         r.names[static_cast<std::size_t>(bad->first)] +
                         "' and '" +
                         r.names[static_cast<std::size_t>(bad->second)] +
                         "' lie on an order cycle");
  }
  if (require_confluence) {
    if (auto bad = find_confluence_violation(r.leq, r.succ)) {
      throw ModelError(ModelErrorKind::Confluence,
                       "confluence violation at (" +
                           r.names[static_cast<std::size_t>(bad->first)] + ", " +
                           r.names[static_cast<std::size_t>(bad->second)] + ")");
    }
  }
  if (auto bad = find_monotonicity_violation(r.leq, r.val)) {
    throw ModelError(ModelErrorKind::Monotonicity,
                     "monotonicity violation at (" +
                         r.names[static_cast<std::size_t>(bad->first)] + ", " +
                         r.names[static_cast<std::size_t>(bad->second)] + ")");
  }
  ModelBuilder b(static_cast<int>(n), r.names);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r.leq[a][c]) b.set_leq(static_cast<int>(a), static_cast<int>(c));
    }
    b.set_succ(static_cast<int>(a), r.succ[a]);
    for (const auto& atom : r.val[a]) b.add_atom(static_cast<int>(a), atom);
  }
  return b.finish(false);  // checks already performed above
}

}  // namespace

DynamicModel DynamicModel::validated(const ModelData& data) {
  return build_checked(resolve(data), true);
}

DynamicModel DynamicModel::poset_only(const ModelData& data) {
  return build_checked(resolve(data), false);
}

std::optional<int> DynamicModel::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool DynamicModel::has_atom(int w, std::string_view atom) const {
  const auto& v = val_[static_cast<std::size_t>(w)];
  return std::binary_search(v.begin(), v.end(), atom);
}

bool DynamicModel::order_is_identity() const {
  for (std::size_t a = 0; a < names_.size(); ++a) {
    for (std::size_t b = 0; b < names_.size(); ++b) {
      if ((a == b) != static_cast<bool>(leq_[a][b])) return false;
    }
  }
  return true;
}

ModelBuilder::ModelBuilder(int world_count, std::vector<std::string> names)
    : names_(std::move(names)),
      leq_(static_cast<std::size_t>(world_count),
           std::vector<bool>(static_cast<std::size_t>(world_count), false)),
      succ_(static_cast<std::size_t>(world_count), -1),
      val_(static_cast<std::size_t>(world_count)) {
  for (std::size_t i = 0; i < leq_.size(); ++i) leq_[i][i] = true;
}

void ModelBuilder::add_atom(int w, const std::string& atom) {
  auto& slot = val_[static_cast<std::size_t>(w)];
  auto it = std::lower_bound(slot.begin(), slot.end(), atom);
  if (it == slot.end() || *it != atom) slot.insert(it, atom);
}

DynamicModel ModelBuilder::finish(bool require_confluence) const {
  DynamicModel m;
  m.names_ = names_;
  m.leq_ = leq_;
  m.succ_ = succ_;
  m.val_ = val_;
  for (std::size_t w = 0; w < succ_.size(); ++w) {
    if (succ_[w] < 0 || succ_[w] >= static_cast<int>(succ_.size())) {
      throw ModelError(ModelErrorKind::SuccNotTotal,
                       "succ of '" + names_[w] + "' is undefined");
    }
  }
  if (require_confluence) {
    if (auto bad = find_confluence_violation(leq_, succ_)) {
      throw ModelError(ModelErrorKind::Confluence,
                       "confluence violation at (" +
                           names_[static_cast<std::size_t>(bad->first)] + ", " +
                           names_[static_cast<std::size_t>(bad->second)] + ")");
    }
  }
  return m;
}

bool FrameReport::satisfies(FrameClass c, bool identity_order) const {
  switch (c) {
    case FrameClass::Dynamic:
      return is_partial_order && is_confluent;
    case FrameClass::Persistent:
      return is_partial_order && is_confluent && is_backward_confluent;
    case FrameClass::Classical:
      return is_partial_order && identity_order;
  }
  return false;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

ModelData parse_model_data(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  ModelData data;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto words = split_words(strip_comment(line));
    if (words.empty()) continue;
    if (!header_seen) {
      if (words.size() != 1 || words[0] != "model") {
        throw ModelError(ModelErrorKind::Syntax,
                         "line " + std::to_string(lineno) +
                             ": expected 'model' header");
      }
      header_seen = true;
      continue;
    }
    const std::string& key = words[0];
    if (key == "worlds") {
      if (words.size() < 2) {
        throw ModelError(ModelErrorKind::Syntax,
                         "line " + std::to_string(lineno) + ": empty worlds line");
      }
      data.worlds.insert(data.worlds.end(), words.begin() + 1, words.end());
    } else if (key == "order") {
      if (words.size() != 3) {
        throw ModelError(ModelErrorKind::Syntax,
                         "line " + std::to_string(lineno) +
                             ": order expects two worlds");
      }
      data.order_pairs.emplace_back(words[1], words[2]);
    } else if (key == "succ") {
      if (words.size() != 3) {
        throw ModelError(ModelErrorKind::Syntax,
                         "line " + std::to_string(lineno) +
                             ": succ expects two worlds");
      }
      data.succ_pairs.emplace_back(words[1], words[2]);
    } else if (key == "val") {
      if (words.size() < 2) {
        throw ModelError(ModelErrorKind::Syntax,
                         "line " + std::to_string(lineno) + ": val expects a world");
      }
      auto& slot = data.valuation[words[1]];
      slot.insert(slot.end(), words.begin() + 2, words.end());
    } else {
      throw ModelError(ModelErrorKind::Syntax,
                       "line " + std::to_string(lineno) + ": unknown keyword '" +
                           key + "'");
    }
  }
  if (!header_seen) {
    throw ModelError(ModelErrorKind::Syntax, "missing 'model' header");
  }
  return data;
}

DynamicModel load_model(std::string_view text) {
  return DynamicModel::validated(parse_model_data(text));
}

std::string save_model(const DynamicModel& m) {
  std::ostringstream out;
  out << "model\nworlds";
  for (int w = 0; w < m.size(); ++w) out << ' ' << m.world_name(w);
  out << '\n';
  // Hasse generators of the stored closed order, sorted by index pair.
  for (int a = 0; a < m.size(); ++a) {
    for (int b = 0; b < m.size(); ++b) {
      if (a == b || !m.leq(a, b)) continue;
      bool covered = false;
      for (int c = 0; c < m.size() && !covered; ++c) {
        if (c != a && c != b && m.leq(a, c) && m.leq(c, b)) covered = true;
      }
      if (!covered) out << "order " << m.world_name(a) << ' ' << m.world_name(b) << '\n';
    }
  }
  for (int w = 0; w < m.size(); ++w) {
    out << "succ " << m.world_name(w) << ' ' << m.world_name(m.succ(w)) << '\n';
  }
  for (int w = 0; w < m.size(); ++w) {
    if (m.atoms(w).empty()) continue;
    out << "val " << m.world_name(w);
    for (const auto& atom : m.atoms(w)) out << ' ' << atom;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Frame reports
// ---------------------------------------------------------------------------

namespace {

FrameReport report_from(const std::vector<std::string>& names,
                        const std::vector<std::vector<bool>>& leq,
                        const std::vector<int>& succ,
                        const std::vector<std::vector<std::string>>& val) {
  FrameReport report;
  auto name_pair = [&](std::pair<int, int> p) {
    return std::make_pair(names[static_cast<std::size_t>(p.first)],
                          names[static_cast<std::size_t>(p.second)]);
  };
  if (auto bad = find_antisymmetry_violation(leq)) {
    report.is_partial_order = false;
    report.order_witness = name_pair(*bad);
  }
  if (auto bad = find_confluence_violation(leq, succ)) {
    report.is_confluent = false;
    report.confluence_witness = name_pair(*bad);
  }
  if (auto bad = find_backward_violation(leq, succ)) {
    report.is_backward_confluent = false;
    report.backward_witness = name_pair(*bad);
  }
  if (auto bad = find_monotonicity_violation(leq, val)) {
    report.is_monotone = false;
    report.monotonicity_witness = name_pair(*bad);
  }
  return report;
}

}  // namespace

FrameReport check_frame(const ModelData& data) {
  ResolvedData r = resolve(data);
  for (std::size_t w = 0; w < r.succ.size(); ++w) {
    if (r.succ[w] < 0) {
      throw ModelError(ModelErrorKind::SuccNotTotal,
                       "succ of '" + r.names[w] + "' is undefined");
    }
  }
  return report_from(r.names, r.leq, r.succ, r.val);
}

FrameReport check_frame(const DynamicModel& m) {
  std::vector<std::vector<std::string>> val;
  val.reserve(static_cast<std::size_t>(m.size()));
  for (int w = 0; w < m.size(); ++w) val.push_back(m.atoms(w));
  return report_from(m.world_names(), m.order_matrix(), m.succ_map(), val);
}

ConfluenceWitness confluence_witness(const DynamicModel& frame, int w0, int v0) {
  if (w0 < 0 || v0 < 0 || w0 >= frame.size() || v0 >= frame.size()) {
    throw std::invalid_argument("confluence_witness: world index out of range");
  }
  if (!frame.leq(w0, v0) || frame.leq(frame.succ(w0), frame.succ(v0))) {
    throw std::invalid_argument(
        "confluence_witness: (" + frame.world_name(w0) + ", " +
        frame.world_name(v0) + ") does not violate confluence");
  }
  ModelBuilder b(frame.size(), frame.world_names());
  const int target = frame.succ(w0);
  for (int a = 0; a < frame.size(); ++a) {
    for (int c = 0; c < frame.size(); ++c) {
      if (frame.leq(a, c)) b.set_leq(a, c);
    }
    b.set_succ(a, frame.succ(a));
    if (frame.leq(target, a)) b.add_atom(a, "p");
  }
  ConfluenceWitness witness{b.finish(false), Formula::next(Formula::atom("p")),
                            w0, v0};
  return witness;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

std::vector<std::vector<std::vector<bool>>> enumerate_partial_orders(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::vector<std::vector<bool>>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  std::vector<std::vector<std::vector<bool>>> result;
  const std::size_t bits = pairs.size();
  if (bits > 30) {
    throw std::invalid_argument("enumerate_partial_orders: n too large");
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    for (std::size_t i = 0; i < bits; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        leq[static_cast<std::size_t>(pairs[i].first)]
           [static_cast<std::size_t>(pairs[i].second)] = true;
      }
    }
    bool ok = !find_antisymmetry_violation(leq).has_value();
    for (int a = 0; a < n && ok; ++a) {
      for (int b = 0; b < n && ok; ++b) {
        if (!leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
        for (int c = 0; c < n; ++c) {
          if (leq[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] &&
              !leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]) {
            ok = false;  // transitivity
            break;
          }
        }
      }
    }
    if (ok) result.push_back(std::move(leq));
  }
  cache[n] = result;
  return result;
}

namespace {

std::string canonical_key(const DynamicModel& m) {
  const int n = m.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::string best;
  do {
    std::string key;
    key.reserve(static_cast<std::size_t>(n * n + 2 * n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        key += m.leq(perm[static_cast<std::size_t>(a)],
                     perm[static_cast<std::size_t>(b)])
                   ? '1'
                   : '0';
      }
    }
    for (int a = 0; a < n; ++a) {
      const int target = m.succ(perm[static_cast<std::size_t>(a)]);
      int inv = 0;
      for (int i = 0; i < n; ++i) {
        if (perm[static_cast<std::size_t>(i)] == target) inv = i;
      }
      key += static_cast<char>('0' + inv);
    }
    for (int a = 0; a < n; ++a) {
      key += '|';
      for (const auto& atom : m.atoms(perm[static_cast<std::size_t>(a)])) {
        key += atom;
        key += ',';
      }
    }
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

void enumerate_models(int max_worlds, const EnumerationOptions& options,
                      const std::function<bool(const DynamicModel&)>& visit) {
  if (max_worlds < 1) {
    throw std::invalid_argument("enumerate_models: max_worlds must be >= 1");
  }
  const auto& atoms = options.atoms;
  const std::size_t atom_count = atoms.size();
  for (int n = 1; n <= max_worlds; ++n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));

    std::vector<std::vector<std::vector<bool>>> orders;
    if (options.frame == FrameClass::Classical) {
      std::vector<std::vector<bool>> identity(
          static_cast<std::size_t>(n),
          std::vector<bool>(static_cast<std::size_t>(n), false));
      for (int i = 0; i < n; ++i) {
        identity[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
      }
      orders.push_back(std::move(identity));
    } else {
      orders = enumerate_partial_orders(n);
    }

    std::set<std::string> seen;
    for (const auto& leq : orders) {
      // Successor maps as a base-n odometer, world 0 least significant.
      std::vector<int> succ(static_cast<std::size_t>(n), 0);
      while (true) {
        bool frame_ok = !find_confluence_violation(leq, succ).has_value();
        if (frame_ok && options.frame == FrameClass::Persistent) {
          frame_ok = !find_backward_violation(leq, succ).has_value();
        }
        if (frame_ok) {
          // Valuations as per-world atom bitmasks, world 0 least significant.
          std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
          while (true) {
            bool monotone = true;
            for (int a = 0; a < n && monotone; ++a) {
              for (int b = 0; b < n && monotone; ++b) {
                if (a != b &&
                    leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] &&
                    (masks[static_cast<std::size_t>(a)] &
                     ~masks[static_cast<std::size_t>(b)]) != 0) {
                  monotone = false;
                }
              }
            }
            if (monotone) {
              ModelBuilder b(n, names);
              for (int a = 0; a < n; ++a) {
                for (int c = 0; c < n; ++c) {
                  if (leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]) {
                    b.set_leq(a, c);
                  }
                }
                b.set_succ(a, succ[static_cast<std::size_t>(a)]);
                for (std::size_t k = 0; k < atom_count; ++k) {
                  if (masks[static_cast<std::size_t>(a)] & (std::uint32_t{1} << k)) {
                    b.add_atom(a, atoms[k]);
                  }
                }
              }
              DynamicModel m = b.finish(false);
              bool emit = true;
              if (options.prune_isomorphic) {
                emit = seen.insert(canonical_key(m)).second;
              }
              if (emit && !visit(m)) return;
            }
            // Advance valuation odometer.
            std::size_t pos = 0;
            while (pos < masks.size()) {
              if (++masks[pos] < (std::uint32_t{1} << atom_count)) break;
              masks[pos] = 0;
              ++pos;
            }
            if (pos == masks.size()) break;
          }
        }
        // Advance successor odometer.
        std::size_t pos = 0;
        while (pos < succ.size()) {
          if (++succ[pos] < n) break;
          succ[pos] = 0;
          ++pos;
        }
        if (pos == succ.size()) break;
      }
    }
  }
}

}  // namespace itl
