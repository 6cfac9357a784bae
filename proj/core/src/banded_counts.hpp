#pragma once

// Suffix counts for one target (K, T), stored only on states that are both
// reachable from the target and completable.  Sites are relabelled 1..n with
// weight i (X_i = eta_{i-l-1}); layer i holds B_i(c, t), the number of ways to
// place c particles with weight t on sites i..n, times `site_factor`^(n-i+1).

#include <algorithm>
#include <type_traits>
#include <vector>

#include "eqens/ensemble.hpp"

namespace eqens::detail {

template <class V>
class BandedCounts {
 public:
  struct Row {
    long long lo = 0;
    std::vector<V> values;
  };
  struct Layer {
    int c_min = 0;
    std::vector<Row> rows;  // rows[c - c_min]
  };

  BandedCounts(const CanonicalSpec& spec, V site_factor)
      : n_(spec.sites()), K_(spec.K), T_(spec.shifted_weight()), factor_(site_factor) {
    layers_.resize(static_cast<std::size_t>(n_) + 2);
    layers_[n_ + 1] = make_layer(n_ + 1);
    for (int c = 0; c < static_cast<int>(layers_[n_ + 1].rows.size()); ++c) {
      auto& row = layers_[n_ + 1].rows[c];
      for (std::size_t j = 0; j < row.values.size(); ++j) {
        const long long t = row.lo + static_cast<long long>(j);
        row.values[j] = (c + layers_[n_ + 1].c_min == 0 && t == 0) ? V(1) : V(0);
      }
    }
    for (int i = n_; i >= 1; --i) {
      Layer layer = make_layer(i);
      const Layer& next = layers_[i + 1];
      for (std::size_t r = 0; r < layer.rows.size(); ++r) {
        const int c = layer.c_min + static_cast<int>(r);
        auto& row = layer.rows[r];
        for (std::size_t j = 0; j < row.values.size(); ++j) {
          const long long t = row.lo + static_cast<long long>(j);
          V v = lookup(next, c, t) + lookup(next, c - 1, t - i);
          if constexpr (std::is_floating_point_v<V>) v *= factor_;
          row.values[j] = v;
        }
      }
      layers_[i] = std::move(layer);
    }
  }

  int sites() const noexcept { return n_; }
  int K() const noexcept { return K_; }
  long long T() const noexcept { return T_; }
  V site_factor() const noexcept { return factor_; }

  /// B_i(c, t); zero outside the stored band.
  V get(int i, int c, long long t) const { return lookup(layers_[i], c, t); }
  V total() const { return get(1, K_, T_); }
  const Layer& layer(int i) const { return layers_[i]; }

  static V lookup(const Layer& layer, int c, long long t) {
    const int r = c - layer.c_min;
    if (r < 0 || r >= static_cast<int>(layer.rows.size())) return V(0);
    const Row& row = layer.rows[r];
    const long long j = t - row.lo;
    if (j < 0 || j >= static_cast<long long>(row.values.size())) return V(0);
    return row.values[static_cast<std::size_t>(j)];
  }

  /// Empty layer with the band of layer i (values zero-initialised).
  Layer make_layer(int i) const {
    Layer layer;
    const int remaining = n_ - i + 1;
    const int used_sites = i - 1;
    layer.c_min = std::max(0, K_ - used_sites);
    const int c_max = std::min(K_, remaining);
    for (int c = layer.c_min; c <= c_max; ++c) {
      const long long cc = c;
      // c distinct sites among i..n
      long long lo = cc * i + cc * (cc - 1) / 2;
      long long hi = cc * n_ - cc * (cc - 1) / 2;
      // K - c distinct sites among 1..i-1 account for T - t
      const long long u = K_ - c;
      lo = std::max(lo, T_ - (u * used_sites - u * (u - 1) / 2));
      hi = std::min(hi, T_ - u * (u + 1) / 2);
      Row row;
      row.lo = lo;
      if (hi >= lo) row.values.assign(static_cast<std::size_t>(hi - lo + 1), V(0));
      layer.rows.push_back(std::move(row));
    }
    return layer;
  }

 private:
  int n_;
  int K_;
  long long T_;
  V factor_;
  std::vector<Layer> layers_;
};

}  // namespace eqens::detail
