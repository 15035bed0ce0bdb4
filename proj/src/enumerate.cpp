#include "spca/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "spca/geometry.hpp"
#include "spca/rank1.hpp"

namespace spca {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(
                 std::numeric_limits<long long>::max())) {
      std::ostringstream msg;
      msg << "binomial(" << n << ", " << k << ") overflows int64";
      throw OverflowError(msg.str());
    }
  }
  return static_cast<long long>(r);
}

long long candidate_bound(int n, int d) {
  if (d < 1 || d > n) throw ValidationError("need 1 <= D <= N");
  unsigned __int128 total = 0;
  const auto cap = static_cast<unsigned __int128>(
      std::numeric_limits<long long>::max());
  for (int red = 0; 2 * red <= d - 1; ++red) {
    const int w = d - 2 * red;
    unsigned __int128 term =
        static_cast<unsigned __int128>(binomial(n, w)) *
        static_cast<unsigned __int128>(binomial(w, d / 2 - red));
    for (int b = 0; b < d - 1 - 2 * red; ++b) {
      term *= 2;
      if (term > cap) throw OverflowError("candidate bound overflows int64");
    }
    total += term;
    if (total > cap) throw OverflowError("candidate bound overflows int64");
  }
  return static_cast<long long>(total);
}

namespace {

int key_width(int n) { return n <= 0xffff ? 2 : 4; }

void pack_support(const Support& s, int width, std::string& key) {
  key.clear();
  for (int i : s) {
    for (int b = 0; b < width; ++b) {
      key.push_back(static_cast<char>((static_cast<unsigned>(i) >> (8 * b)) &
                                      0xffu));
    }
  }
}

Support unpack_support(const std::string& key, int width) {
  Support s(key.size() / width);
  for (size_t j = 0; j < s.size(); ++j) {
    unsigned val = 0;
    for (int b = 0; b < width; ++b) {
      val |= static_cast<unsigned>(static_cast<unsigned char>(
                 key[j * width + b]))
             << (8 * b);
    }
    s[j] = static_cast<int>(val);
  }
  return s;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int d = static_cast<int>(comb.size());
  for (int i = d - 1; i >= 0; --i) {
    if (comb[i] < n - d + i) {
      ++comb[i];
      for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> unrank_combination(long long rank, int n, int d) {
  std::vector<int> comb(d);
  int x = 0;
  for (int i = 0; i < d; ++i) {
    for (;;) {
      const long long below = binomial(n - x - 1, d - i - 1);
      if (rank < below) break;
      rank -= below;
      ++x;
    }
    comb[i] = x++;
  }
  return comb;
}

struct LevelCounters {
  long long points = 0;
  long long degenerate = 0;
};

// Examines signed index sets with linear indices [begin, end) at level D,
// emitting packed candidate supports into out.
void enumerate_level_range(const Matrix& v, int k, long long begin,
                           long long end, double null_tol,
                           std::unordered_set<std::string>& out,
                           LevelCounters& counters) {
  const int n = static_cast<int>(v.rows());
  const int d = static_cast<int>(v.cols());
  const int width = key_width(n);
  const long long sign_count = 1LL << (d - 1);

  SignedIndexSet jset;
  jset.rows = unrank_combination(begin / sign_count, n, d);
  jset.signs.assign(d, 1);
  long long bits = begin % sign_count;

  Vector c(d);
  Vector vc(n);
  std::vector<double> mags(n);
  std::vector<char> in_j(n, 0);
  std::vector<int> nonj, base, pick;
  Support supp;
  std::string key;
  const double* mp = mags.data();
  auto larger = [mp](int a, int b) {
    return mp[a] > mp[b] || (mp[a] == mp[b] && a < b);
  };

  for (long long l = begin; l < end; ++l) {
    for (int m = 1; m < d; ++m) {
      jset.signs[m] = ((bits >> (m - 1)) & 1) ? -1 : 1;
    }

    if (!intersection_direction_into(v, jset.rows.data(), jset.signs.data(), d,
                                     null_tol, c)) {
      ++counters.degenerate;
    } else {
      ++counters.points;
      vc.noalias() = v * c;
      for (int i = 0; i < n; ++i) mags[i] = std::abs(vc(i));

      // The d rows of the set are exactly tied by construction; their common
      // magnitude is read off row i1 to avoid d slightly-different floats.
      const double tie = mags[jset.rows[0]];
      for (int r : jset.rows) in_j[r] = 1;
      nonj.clear();
      int above = 0;
      for (int i = 0; i < n; ++i) {
        if (!in_j[i]) {
          nonj.push_back(i);
          if (mags[i] > tie) ++above;
        }
      }
      for (int r : jset.rows) in_j[r] = 0;

      const int dl = std::clamp(k - above, 0, d);
      const int base_size = k - dl;
      if (base_size > 0 && base_size < static_cast<int>(nonj.size())) {
        std::nth_element(nonj.begin(), nonj.begin() + (base_size - 1),
                         nonj.end(), larger);
      }
      base.assign(nonj.begin(), nonj.begin() + base_size);
      std::sort(base.begin(), base.end());

      // One support per choice of dl tied rows: C(d, dl) completions.
      pick.resize(dl);
      for (int i = 0; i < dl; ++i) pick[i] = i;
      for (;;) {
        supp = base;
        for (int p : pick) supp.push_back(jset.rows[p]);
        std::sort(supp.begin(), supp.end());
        pack_support(supp, width, key);
        out.insert(key);
        if (dl == 0 || !next_combination(pick, d)) break;
      }
    }

    // advance to the next signed set
    if (++bits == sign_count) {
      bits = 0;
      if (l + 1 < end) next_combination(jset.rows, n);
    }
  }
}

void run_level(const Matrix& v, int k, const EnumOptions& opts,
               std::unordered_set<std::string>& out, LevelCounters& counters) {
  const int n = static_cast<int>(v.rows());
  const int d = static_cast<int>(v.cols());
  const int width = key_width(n);

  if (d == 1) {
    Support s = top_k_magnitudes(v.col(0), k);
    std::string key;
    pack_support(s, width, key);
    out.insert(key);
    return;
  }

  const long long total = binomial(n, d) * (1LL << (d - 1));
  const int threads = std::max(
      1, static_cast<int>(std::min<long long>(opts.threads, total)));
  if (threads == 1) {
    enumerate_level_range(v, k, 0, total, opts.null_tol, out, counters);
  } else {
    std::vector<std::unordered_set<std::string>> sets(threads);
    std::vector<LevelCounters> parts(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const long long lo = total * t / threads;
      const long long hi = total * (t + 1) / threads;
      pool.emplace_back(enumerate_level_range, std::cref(v), k, lo, hi,
                        opts.null_tol, std::ref(sets[t]), std::ref(parts[t]));
    }
    for (auto& th : pool) th.join();
    for (int t = 0; t < threads; ++t) {
      counters.points += parts[t].points;
      counters.degenerate += parts[t].degenerate;
      out.merge(sets[t]);
    }
  }
}

void validate_enum_args(const Matrix& v, int k) {
  const int n = static_cast<int>(v.rows());
  const int d = static_cast<int>(v.cols());
  if (d < 1 || d > n) throw ValidationError("need 1 <= D <= N");
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "k=" << k << " outside [1, " << n << "]";
    throw ValidationError(msg.str());
  }
  if (!v.allFinite()) throw ValidationError("factor V has non-finite entries");
}

CandidateFamily finish_family(std::unordered_set<std::string>&& keys, int n,
                              const LevelCounters& counters) {
  CandidateFamily fam;
  fam.supports.reserve(keys.size());
  const int width = key_width(n);
  for (const auto& key : keys) fam.supports.push_back(unpack_support(key, width));
  std::sort(fam.supports.begin(), fam.supports.end());
  fam.points_examined = counters.points;
  fam.degenerate_skipped = counters.degenerate;
  return fam;
}

}  // namespace

CandidateFamily enumerate_rank2(const Matrix& v, int k,
                                const EnumOptions& opts) {
  validate_enum_args(v, k);
  if (v.cols() != 2) throw ValidationError("enumerate_rank2 needs D = 2");
  std::unordered_set<std::string> keys;
  LevelCounters counters;
  run_level(v, k, opts, keys, counters);
  if (counters.points == 0) {
    throw DegenerateError("all rank-2 intersection points are degenerate");
  }
  return finish_family(std::move(keys), static_cast<int>(v.rows()), counters);
}

CandidateFamily enumerate_rank_d(const Matrix& v, int k,
                                 const EnumOptions& opts) {
  validate_enum_args(v, k);
  if (v.cols() == 2) return enumerate_rank2(v, k, opts);
  std::unordered_set<std::string> keys;
  LevelCounters counters;
  run_level(v, k, opts, keys, counters);
  if (v.cols() >= 3 && counters.points == 0) {
    throw DegenerateError("all intersection points are degenerate");
  }
  return finish_family(std::move(keys), static_cast<int>(v.rows()), counters);
}

namespace {

void enumerate_total_into(const Matrix& v, int k, const EnumOptions& opts,
                          std::unordered_set<std::string>& keys,
                          LevelCounters& counters,
                          std::vector<char>& width_done) {
  const int d = static_cast<int>(v.cols());
  for (int red = 0; 2 * red <= d - 1; ++red) {
    const int w = d - 2 * red;
    if (width_done[w]) continue;
    width_done[w] = 1;
    run_level(v.leftCols(w), k, opts, keys, counters);
  }
  if (opts.extra_reductions && d >= 2 && !width_done[d - 1]) {
    enumerate_total_into(v.leftCols(d - 1), k, opts, keys, counters,
                         width_done);
  }
}

}  // namespace

CandidateFamily enumerate_total(const Matrix& v, int k,
                                const EnumOptions& opts) {
  validate_enum_args(v, k);
  std::unordered_set<std::string> keys;
  LevelCounters counters;
  std::vector<char> width_done(v.cols() + 1, 0);
  enumerate_total_into(v, k, opts, keys, counters, width_done);
  if (v.cols() >= 2 && counters.points == 0) {
    throw DegenerateError("all intersection points are degenerate");
  }
  return finish_family(std::move(keys), static_cast<int>(v.rows()), counters);
}

}  // namespace spca
