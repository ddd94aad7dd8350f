#include "raspberry/necklace.hpp"

#include <algorithm>
#include <set>

namespace raspberry {

namespace {

// Comparison key: higher labels order first (2 < 1 in the bead order).
int bead_key(int label) { return -label; }

bool bead_word_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](int x, int y) { return bead_key(x) < bead_key(y); });
}

std::vector<int> rotated(const std::vector<int>& w, size_t k) {
  std::vector<int> r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = w[(i + k) % w.size()];
  return r;
}

}  // namespace

bool operator<(const NecklaceCode& a, const NecklaceCode& b) {
  if (a.head != b.head) return a.head < b.head;
  if (a.beads.size() != b.beads.size()) return a.beads.size() < b.beads.size();
  return bead_word_less(a.beads, b.beads);
}

std::string NecklaceCode::str() const {
  std::string s = "0" + std::to_string(head) + ":";
  for (int b : beads) {
    if (b < 0 || b > 9) throw NecklaceError("label out of range for text form");
    s += static_cast<char>('0' + b);
  }
  return s;
}

NecklaceCode NecklaceCode::parse(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon < 2 || s[0] != '0' ||
      colon + 3 > s.size())
    throw NecklaceError("unparseable necklace code: " + s);
  int head = 0;
  for (size_t i = 1; i < colon; ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw NecklaceError("unparseable necklace code: " + s);
    head = head * 10 + (s[i] - '0');
  }
  std::vector<int> beads;
  for (size_t i = colon + 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw NecklaceError("unparseable necklace code: " + s);
    beads.push_back(s[i] - '0');
  }
  return canonicalize(head, std::move(beads));
}

NecklaceCode canonicalize(int head, std::vector<int> beads) {
  if (beads.size() < 3) throw NecklaceError("no lune/hemisphere necklaces");
  for (int b : beads)
    if (b <= 0) throw NecklaceError("bead labels must be positive");
  std::vector<int> best = beads;
  std::vector<int> rev(beads.rbegin(), beads.rend());
  for (size_t k = 0; k < beads.size(); ++k) {
    for (const auto* base : {&beads, &rev}) {
      std::vector<int> cand = rotated(*base, k);
      if (bead_word_less(cand, best)) best = std::move(cand);
    }
  }
  NecklaceCode c;
  c.head = head;
  c.beads = std::move(best);
  return c;
}

std::vector<NecklaceCode> enumerate_codes(
    int head, const std::vector<int>& alphabet, int min_len, int max_len,
    const std::function<bool(const NecklaceCode&)>& keep) {
  if (min_len > max_len || min_len < 3)
    throw NecklaceError("no lune/hemisphere necklaces");
  std::set<NecklaceCode> out;
  for (int len = min_len; len <= max_len; ++len) {
    std::vector<int> word(static_cast<size_t>(len), 0);
    std::vector<size_t> idx(static_cast<size_t>(len), 0);
    while (true) {
      for (int i = 0; i < len; ++i) word[static_cast<size_t>(i)] = alphabet[idx[static_cast<size_t>(i)]];
      NecklaceCode c = canonicalize(head, word);
      if (!keep || keep(c)) out.insert(std::move(c));
      int pos = len - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] + 1 == alphabet.size()) {
        idx[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
    }
  }
  return {out.begin(), out.end()};
}

template <typename T>
T dihedral_sum(const NecklaceCode& code, const LabeledRadii<T>& radii) {
  const auto& b = code.beads;
  T sum = dihedral_angle(code.head, b[0], b[1 % b.size()], radii);
  for (size_t j = 1; j < b.size(); ++j)
    sum = sum + dihedral_angle(code.head, b[j], b[(j + 1) % b.size()], radii);
  return sum;
}

template BigScalar dihedral_sum<BigScalar>(const NecklaceCode&,
                                           const LabeledRadii<BigScalar>&);
template Interval dihedral_sum<Interval>(const NecklaceCode&,
                                         const LabeledRadii<Interval>&);

std::string TripleRequirement::str() const {
  return "head " + std::to_string(head) + " must carry (" +
         std::to_string(around[0]) + "," + std::to_string(around[1]) + "," +
         std::to_string(around[2]) + ") [from head " +
         std::to_string(source_head) + "]";
}

bool operator==(const TripleRequirement& x, const TripleRequirement& y) {
  return x.head == y.head && x.around == y.around;
}

bool operator<(const TripleRequirement& x, const TripleRequirement& y) {
  if (x.head != y.head) return x.head < y.head;
  return x.around < y.around;
}

std::vector<TripleRequirement> complement_requirements(const NecklaceCode& code) {
  std::set<TripleRequirement> reqs;
  const auto& b = code.beads;
  size_t m = b.size();
  for (size_t j = 0; j < m; ++j) {
    int a = b[(j + m - 1) % m];
    int mid = b[j];
    int c = b[(j + 1) % m];
    TripleRequirement r;
    r.source_head = code.head;
    r.head = mid;
    r.around = {a, code.head, c};
    // (a, h, c) and its reflection name the same requirement
    TripleRequirement mirror = r;
    mirror.around = {c, code.head, a};
    reqs.insert(std::min(r, mirror));
  }
  return {reqs.begin(), reqs.end()};
}

bool contains_triple(const NecklaceCode& code, int a, int h, int c) {
  const auto& b = code.beads;
  size_t m = b.size();
  for (size_t j = 0; j < m; ++j) {
    int x = b[j], y = b[(j + 1) % m], z = b[(j + 2) % m];
    if (y != h) continue;
    if ((x == a && z == c) || (x == c && z == a)) return true;
  }
  return false;
}

ClosureCheck is_complementation_closed(const std::vector<NecklaceCode>& codes) {
  for (const NecklaceCode& code : codes) {
    for (const TripleRequirement& req : complement_requirements(code)) {
      bool met = false;
      for (const NecklaceCode& other : codes) {
        if (other.head != req.head) continue;
        if (contains_triple(other, req.around[0], req.around[1], req.around[2])) {
          met = true;
          break;
        }
      }
      if (!met) return {false, req};
    }
  }
  return {true, std::nullopt};
}

std::vector<NecklaceCode> largest_closed_subset(std::vector<NecklaceCode> codes) {
  bool changed = true;
  while (changed && !codes.empty()) {
    changed = false;
    for (size_t i = 0; i < codes.size(); ++i) {
      bool all_met = true;
      for (const TripleRequirement& req : complement_requirements(codes[i])) {
        bool met = false;
        for (const NecklaceCode& other : codes) {
          if (other.head != req.head) continue;
          if (contains_triple(other, req.around[0], req.around[1], req.around[2])) {
            met = true;
            break;
          }
        }
        if (!met) {
          all_met = false;
          break;
        }
      }
      if (!all_met) {
        codes.erase(codes.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return codes;
}

}  // namespace raspberry
