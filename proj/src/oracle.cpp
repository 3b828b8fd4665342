#include "rankprover/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rankprover {
namespace {

// Rank of bit-vector rows over GF(2) by xor elimination.
int rank_gf2(std::uint32_t* rows, int n) {
  int rank = 0;
  for (int c = 0; rank < n; ++c) {
    std::uint32_t bit = std::uint32_t{1} << c;
    if (bit == 0 || c >= 32) break;
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (rows[r] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < n; ++r) {
      if (rows[r] & bit) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

// Rank over GF(3); rows are coordinate arrays with entries in {0,1,2}.
int rank_gf3(std::array<std::uint8_t, kMaxModelCoords>* rows, int n, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < n; ++c) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (rows[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    if (rows[rank][c] == 2) { // scale by 2 (the inverse of 2 mod 3)
      for (int j = c; j < cols; ++j) rows[rank][j] = static_cast<std::uint8_t>(rows[rank][j] * 2 % 3);
    }
    for (int r = rank + 1; r < n; ++r) {
      std::uint8_t f = rows[r][c];
      if (f == 0) continue;
      for (int j = c; j < cols; ++j) {
        rows[r][j] = static_cast<std::uint8_t>((rows[r][j] + (3 - f) * rows[rank][j]) % 3);
      }
    }
    ++rank;
  }
  return rank;
}

int vector_encode(const std::array<std::uint8_t, kMaxModelCoords>& v, int q, int cols) {
  int code = 0;
  for (int j = cols - 1; j >= 0; --j) code = code * q + v[j];
  return code;
}

// First nonzero coordinate scaled to 1 (no-op over GF(2)).
void normalize_gf3(std::array<std::uint8_t, kMaxModelCoords>& v, int cols) {
  for (int j = 0; j < cols; ++j) {
    if (v[j] == 1) return;
    if (v[j] == 2) {
      for (int k = j; k < cols; ++k) v[k] = static_cast<std::uint8_t>(v[k] * 2 % 3);
      return;
    }
  }
}

} // namespace

ProjectiveModel make_model(int q, int dim) {
  if (q != 2 && q != 3) throw std::invalid_argument("model field size must be 2 or 3");
  if (dim < 1 || dim >= kMaxModelCoords) {
    throw std::invalid_argument("model dimension must be between 1 and " +
                                std::to_string(kMaxModelCoords - 1));
  }
  ProjectiveModel m;
  m.q = q;
  m.dim = dim;
  const int cols = dim + 1;
  long total = 1;
  for (int i = 0; i < cols; ++i) total *= q;
  for (long code = 1; code < total; ++code) {
    std::array<std::uint8_t, kMaxModelCoords> v{};
    long rest = code;
    for (int j = 0; j < cols; ++j) {
      v[j] = static_cast<std::uint8_t>(rest % q);
      rest /= q;
    }
    // Keep only normalized representatives: first nonzero coordinate is 1.
    int first = 0;
    while (v[first] == 0) ++first;
    if (v[first] != 1) continue;
    m.points.push_back(v);
    if (q == 2) {
      std::uint32_t mask = 0;
      for (int j = 0; j < cols; ++j) mask |= std::uint32_t(v[j]) << j;
      m.masks.push_back(mask);
    }
  }
  return m;
}

int model_rank(const ProjectiveModel& m, const std::vector<int>& point_indices) {
  const int n = static_cast<int>(point_indices.size());
  if (n == 0) return 0;
  if (m.q == 2) {
    std::uint32_t rows[32];
    for (int i = 0; i < n; ++i) rows[i] = m.masks[point_indices[i]];
    return rank_gf2(rows, n);
  }
  std::array<std::uint8_t, kMaxModelCoords> rows[32];
  for (int i = 0; i < n; ++i) rows[i] = m.points[point_indices[i]];
  return rank_gf3(rows, n, m.coord_count());
}

int assigned_rank(const ProjectiveModel& m, const Assignment& asg, PointSet s) {
  const int n = s.count();
  if (n == 0) return 0;
  if (m.q == 2) {
    std::uint32_t rows[32];
    int k = 0;
    for (std::size_t i = 0; i < asg.size(); ++i) {
      if (s.contains(i)) rows[k++] = m.masks[asg[i]];
    }
    return rank_gf2(rows, k);
  }
  std::array<std::uint8_t, kMaxModelCoords> rows[32];
  int k = 0;
  for (std::size_t i = 0; i < asg.size(); ++i) {
    if (s.contains(i)) rows[k++] = m.points[asg[i]];
  }
  return rank_gf3(rows, k, m.coord_count());
}

bool constraint_holds(const ProjectiveModel& m, const Assignment& asg, const RankConstraint& c) {
  int r = assigned_rank(m, asg, c.set);
  switch (c.relation) {
    case Relation::Eq: return r == c.value;
    case Relation::Le: return r <= c.value;
    case Relation::Ge: return r >= c.value;
  }
  return false;
}

std::optional<std::size_t> first_violated_hypothesis(const ProjectiveModel& m,
                                                     const Statement& stmt,
                                                     const Assignment& asg) {
  for (std::size_t i = 0; i < stmt.hypotheses.size(); ++i) {
    if (!constraint_holds(m, asg, stmt.hypotheses[i])) return i;
  }
  return std::nullopt;
}

namespace {

// Shared DFS over assignments. Points are assigned in first-appearance order;
// each hypothesis is checked exactly at the position where its last point gets
// a value, and EQ/LE hypotheses prune earlier whenever the rank of their
// already-assigned points exceeds the target (rank is monotone in the set).
class Searcher {
 public:
  Searcher(const Statement& stmt, const ProjectiveModel& model, std::uint64_t budget,
           std::uint64_t seed)
      : stmt_(stmt), model_(model), budget_(budget) {
    const std::size_t n = stmt.universe.size();
    order_.reserve(n);
    std::vector<bool> placed(n, false);
    auto place = [&](PointSet s) {
      for (std::size_t i = 0; i < n; ++i) {
        if (s.contains(i) && !placed[i]) {
          placed[i] = true;
          order_.push_back(static_cast<int>(i));
        }
      }
    };
    for (const auto& h : stmt.hypotheses) place(h.set);
    for (const auto& c : stmt.conclusions) place(c.set);
    place(stmt.universe.full_set());

    pos_of_.assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) pos_of_[order_[p]] = static_cast<int>(p);

    exact_at_.assign(n, {});
    partial_at_.assign(n, {});
    for (std::size_t h = 0; h < stmt.hypotheses.size(); ++h) {
      const RankConstraint& c = stmt.hypotheses[h];
      std::vector<int> pts; // constraint's points ordered by assignment position
      for (std::size_t i = 0; i < n; ++i) {
        if (c.set.contains(i)) pts.push_back(static_cast<int>(i));
      }
      std::sort(pts.begin(), pts.end(), [&](int a, int b) { return pos_of_[a] < pos_of_[b]; });
      int maxpos = pos_of_[pts.back()];
      exact_at_[maxpos].push_back(static_cast<int>(h));
      if (c.relation != Relation::Ge) {
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
          partial_at_[pos_of_[pts[k]]].push_back(
              {static_cast<int>(h), static_cast<int>(k + 1)});
        }
      }
      hyp_points_.push_back(std::move(pts));
    }

    // Value order: natural for tiny universes (exhaustive scans stay
    // reproducible), seed-shuffled otherwise.
    std::vector<int> base(model.size());
    std::iota(base.begin(), base.end(), 0);
    values_.assign(n, base);
    if (n > 5) {
      std::mt19937_64 rng(seed);
      for (auto& v : values_) std::shuffle(v.begin(), v.end(), rng);
    }
    asg_.assign(n, 0);
  }

  // Runs the DFS. on_leaf is called for every assignment satisfying all
  // hypotheses; returning true stops the search.
  template <typename Leaf>
  void run(Leaf&& on_leaf) {
    stopped_ = false;
    budget_hit_ = false;
    descend(0, on_leaf);
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return !stopped_ && !budget_hit_; }

 private:
  struct PartialCheck {
    int hyp;
    int prefix_len;
  };

  template <typename Leaf>
  void descend(std::size_t pos, Leaf&& on_leaf) {
    if (stopped_ || budget_hit_) return;
    if (pos == order_.size()) {
      if (on_leaf(asg_)) stopped_ = true;
      return;
    }
    const int point = order_[pos];
    for (int value : values_[pos]) {
      if (stopped_ || budget_hit_) return;
      if (++nodes_ > budget_) {
        budget_hit_ = true;
        return;
      }
      asg_[point] = value;
      if (!checks_pass(pos)) continue;
      descend(pos + 1, on_leaf);
    }
  }

  bool checks_pass(std::size_t pos) {
    for (const PartialCheck& pc : partial_at_[pos]) {
      const RankConstraint& c = stmt_.hypotheses[pc.hyp];
      if (prefix_rank(pc.hyp, pc.prefix_len) > c.value) return false;
    }
    for (int h : exact_at_[pos]) {
      const RankConstraint& c = stmt_.hypotheses[h];
      int r = prefix_rank(h, static_cast<int>(hyp_points_[h].size()));
      bool ok = c.relation == Relation::Eq   ? r == c.value
                : c.relation == Relation::Le ? r <= c.value
                                             : r >= c.value;
      if (!ok) return false;
    }
    return true;
  }

  int prefix_rank(int hyp, int len) {
    scratch_.clear();
    for (int k = 0; k < len; ++k) scratch_.push_back(asg_[hyp_points_[hyp][k]]);
    return model_rank(model_, scratch_);
  }

  const Statement& stmt_;
  const ProjectiveModel& model_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  bool budget_hit_ = false;
  std::vector<int> order_, pos_of_;
  std::vector<std::vector<int>> exact_at_;
  std::vector<std::vector<PartialCheck>> partial_at_;
  std::vector<std::vector<int>> hyp_points_;
  std::vector<std::vector<int>> values_;
  Assignment asg_;
  std::vector<int> scratch_;
};

} // namespace

CountermodelResult search_countermodel(const Statement& stmt, const ProjectiveModel& model,
                                       std::uint64_t budget, std::uint64_t seed) {
  CountermodelResult res;
  Searcher s(stmt, model, budget, seed);
  s.run([&](const Assignment& asg) {
    for (std::size_t ci = 0; ci < stmt.conclusions.size(); ++ci) {
      if (constraint_holds(model, asg, stmt.conclusions[ci])) continue;
      // Independent re-verification before reporting.
      if (first_violated_hypothesis(model, stmt, asg).has_value()) break;
      res.found = true;
      res.assignment = asg;
      res.violated_conclusion = ci;
      return true;
    }
    return false;
  });
  res.nodes = s.nodes();
  res.exhausted = !res.found && s.exhausted();
  return res;
}

std::vector<Assignment> sample_satisfying(const Statement& stmt, const ProjectiveModel& model,
                                          std::size_t want, std::uint64_t budget,
                                          std::uint64_t seed) {
  std::vector<Assignment> out;
  if (want == 0) return out;
  Searcher s(stmt, model, budget, seed);
  s.run([&](const Assignment& asg) {
    out.push_back(asg);
    return out.size() >= want;
  });
  return out;
}

Assignment random_linear_image(const ProjectiveModel& m, const Assignment& base,
                               std::uint64_t seed) {
  const int cols = m.coord_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, m.q - 1);

  // Rejection-sample an invertible matrix over GF(q).
  std::array<std::array<std::uint8_t, kMaxModelCoords>, kMaxModelCoords> mat{};
  for (;;) {
    for (int r = 0; r < cols; ++r) {
      for (int c = 0; c < cols; ++c) mat[r][c] = static_cast<std::uint8_t>(coef(rng));
    }
    bool invertible;
    if (m.q == 2) {
      std::uint32_t bits[kMaxModelCoords];
      for (int r = 0; r < cols; ++r) {
        bits[r] = 0;
        for (int c = 0; c < cols; ++c) bits[r] |= std::uint32_t(mat[r][c] & 1) << c;
      }
      invertible = rank_gf2(bits, cols) == cols;
    } else {
      std::array<std::uint8_t, kMaxModelCoords> rows[kMaxModelCoords];
      for (int r = 0; r < cols; ++r) rows[r] = mat[r];
      invertible = rank_gf3(rows, cols, cols) == cols;
    }
    if (invertible) break;
  }

  // Index lookup by encoded normalized vector.
  long total = 1;
  for (int i = 0; i < cols; ++i) total *= m.q;
  std::vector<int> index_of(static_cast<std::size_t>(total), -1);
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    index_of[vector_encode(m.points[i], m.q, cols)] = static_cast<int>(i);
  }

  Assignment out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto& v = m.points[base[i]];
    std::array<std::uint8_t, kMaxModelCoords> w{};
    for (int r = 0; r < cols; ++r) {
      int acc = 0;
      for (int c = 0; c < cols; ++c) acc += mat[r][c] * v[c];
      w[r] = static_cast<std::uint8_t>(acc % m.q);
    }
    if (m.q == 3) normalize_gf3(w, cols);
    int idx = index_of[vector_encode(w, m.q, cols)];
    if (idx < 0) throw std::logic_error("linear image left the model point set");
    out[i] = idx;
  }
  return out;
}

} // namespace rankprover
