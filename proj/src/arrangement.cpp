#include "tinvis/arrangement.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tinvis {

namespace {

bool is_permutation_of_1_to_n(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n + 1, 0);
  for (int x : v) {
    if (x < 1 || x > n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// Shared sweep state. order is top to bottom, pos inverts it, ptr[i] indexes
// the next unmet partner in seq of line i+1.
struct SweepState {
  std::vector<int> order;
  std::vector<int> pos;   // by line id, 1-based
  std::vector<int> ptr;   // by line id, 1-based

  explicit SweepState(const ArrangementSpec& spec)
      : order(spec.initial_order), pos(spec.n + 1, 0), ptr(spec.n + 1, 0) {
    for (int k = 0; k < spec.n; ++k) pos[order[k]] = k;
  }

  int next_partner(const ArrangementSpec& spec, int line) const {
    const auto& s = spec.seq[line - 1];
    return ptr[line] < static_cast<int>(s.size()) ? s[ptr[line]] : 0;
  }

  // Adjacent rows k, k+1 are ready when each line's sequence demands the
  // other next.
  bool ready(const ArrangementSpec& spec, int k) const {
    int a = order[k], b = order[k + 1];
    return next_partner(spec, a) == b && next_partner(spec, b) == a;
  }

  void swap_rows(int k) {
    int a = order[k], b = order[k + 1];
    std::swap(order[k], order[k + 1]);
    pos[a] = k + 1;
    pos[b] = k;
    ++ptr[a];
    ++ptr[b];
  }
};

}  // namespace

std::optional<std::string> validate_spec(const ArrangementSpec& spec) {
  if (spec.n < 1) return "n must be at least 1";
  if (!is_permutation_of_1_to_n(spec.initial_order, spec.n))
    return "initial_order is not a permutation of 1..n";
  if (static_cast<int>(spec.seq.size()) != spec.n) return "seq must have one entry per line";
  for (int i = 1; i <= spec.n; ++i) {
    const auto& s = spec.seq[i - 1];
    if (static_cast<int>(s.size()) != spec.n - 1)
      return "seq of line " + std::to_string(i) + " must list the other n-1 lines";
    std::vector<char> seen(spec.n + 1, 0);
    for (int partner : s) {
      if (partner < 1 || partner > spec.n || partner == i || seen[partner])
        return "seq of line " + std::to_string(i) + " is not a permutation of the other lines";
      seen[partner] = 1;
    }
  }
  return std::nullopt;
}

std::variant<SweepSchedule, Unrealizable> sweep_schedule(const ArrangementSpec& spec) {
  if (auto problem = validate_spec(spec)) throw std::invalid_argument(*problem);
  SweepState st(spec);
  int total = spec.n * (spec.n - 1) / 2;
  SweepSchedule out;
  out.spec = spec;
  out.events.reserve(total);
  out.order_before.reserve(total);
  for (int done = 0; done < total; ++done) {
    int pick = -1;
    for (int k = spec.n - 2; k >= 0; --k) {
      if (st.ready(spec, k)) {
        pick = k;
        break;
      }
    }
    if (pick < 0) {
      Unrealizable cert;
      cert.stuck_order = st.order;
      cert.next_expected.resize(spec.n);
      for (int i = 1; i <= spec.n; ++i) cert.next_expected[i - 1] = st.next_partner(spec, i);
      cert.events_done = done;
      return cert;
    }
    out.order_before.push_back(st.order);
    out.events.push_back(make_pair_sorted(st.order[pick], st.order[pick + 1]));
    st.swap_rows(pick);
  }
  out.final_order = st.order;
  // Every pair swapped exactly once, so the sweep must end at the reversal.
  std::vector<int> reversed(spec.initial_order.rbegin(), spec.initial_order.rend());
  if (out.final_order != reversed)
    throw std::logic_error("sweep did not end at the reversed order");
  return out;
}

std::vector<std::pair<Rat, CrossingPair>> crossing_order(const std::vector<Line>& lines) {
  int n = static_cast<int>(lines.size());
  std::vector<std::pair<Rat, CrossingPair>> xs;
  xs.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Rat ds = lines[i].slope - lines[j].slope;
      if (ds == 0)
        throw std::invalid_argument("lines " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " are parallel");
      Rat x = (lines[j].intercept - lines[i].intercept) / ds;
      xs.push_back({x, {i + 1, j + 1}});
    }
  }
  std::sort(xs.begin(), xs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Concurrency shows up as one line meeting two partners at the same x.
  std::map<std::pair<int, Rat>, int> seen;
  for (const auto& [x, pr] : xs) {
    for (int line : {pr.a, pr.b}) {
      auto key = std::make_pair(line, x);
      auto it = seen.find(key);
      if (it != seen.end())
        throw std::invalid_argument("lines " + std::to_string(it->second) + ", " +
                                    std::to_string(pr.a) + ", " + std::to_string(pr.b) +
                                    " are concurrent");
      seen[key] = pr.a == line ? pr.b : pr.a;
    }
  }
  return xs;
}

ArrangementSpec arrangement_from_lines(const std::vector<Line>& lines) {
  int n = static_cast<int>(lines.size());
  if (n < 1) throw std::invalid_argument("need at least one line");
  auto xs = crossing_order(lines);

  ArrangementSpec spec;
  spec.n = n;
  // Far-left probe: left of every crossing the vertical order is crossing-free.
  Rat x0 = xs.empty() ? Rat(0) : xs.front().first - 1;
  spec.initial_order.resize(n);
  for (int i = 0; i < n; ++i) spec.initial_order[i] = i + 1;
  std::sort(spec.initial_order.begin(), spec.initial_order.end(), [&](int a, int b) {
    Rat ya = lines[a - 1].slope * x0 + lines[a - 1].intercept;
    Rat yb = lines[b - 1].slope * x0 + lines[b - 1].intercept;
    return ya > yb;
  });
  spec.seq.assign(n, {});
  for (const auto& [x, pr] : xs) {
    spec.seq[pr.a - 1].push_back(pr.b);
    spec.seq[pr.b - 1].push_back(pr.a);
  }
  return spec;
}

bool is_valid_execution(const ArrangementSpec& spec, const std::vector<CrossingPair>& events) {
  if (validate_spec(spec)) return false;
  if (static_cast<int>(events.size()) != spec.n * (spec.n - 1) / 2) return false;
  SweepState st(spec);
  for (const auto& ev : events) {
    if (ev.a < 1 || ev.a > spec.n || ev.b < 1 || ev.b > spec.n) return false;
    int pa = st.pos[ev.a], pb = st.pos[ev.b];
    int k = std::min(pa, pb);
    if (std::max(pa, pb) != k + 1) return false;
    if (!st.ready(spec, k)) return false;
    st.swap_rows(k);
  }
  return true;
}

}  // namespace tinvis
