#include "pspec/core.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace pspec {

Pattern::Pattern(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error("pattern must have length >= 1");
  std::vector<char> seen(entries_.size(), 0);
  for (int v : entries_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v - 1)])
      throw Error("entries are not a permutation of 1.." + std::to_string(size()));
    seen[static_cast<std::size_t>(v - 1)] = 1;
  }
}

Pattern Pattern::from_string(std::string_view text) {
  if (text.empty()) throw ParseError("empty pattern", 0);
  std::vector<int> entries;
  if (text.find(',') == std::string_view::npos) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] < '1' || text[i] > '9') throw ParseError("expected digit 1-9", i);
      entries.push_back(text[i] - '0');
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      std::string_view tok = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
      int v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError("expected integer entry", pos);
      entries.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  try {
    return Pattern(std::move(entries));
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string Pattern::str() const {
  std::string out;
  const bool digits = size() <= 9;
  for (int i = 0; i < size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(entries_[static_cast<std::size_t>(i)]);
  }
  return out;
}

DescentWord::DescentWord(std::string letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] != 'a' && letters_[i] != 'b')
      throw ParseError("descent word letters must be 'a' or 'b'", i);
}

PatternSet::PatternSet(int m, std::vector<Pattern> members) : m_(m), members_(std::move(members)) {
  validate();
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

void PatternSet::validate() const {
  if (m_ < 1) throw Error("window order m must be >= 1");
  for (const Pattern& p : members_)
    if (p.size() != m_ + 1)
      throw ArityMismatch("pattern " + p.str() + " has length " + std::to_string(p.size()) +
                          ", expected " + std::to_string(m_ + 1));
}

PatternSet PatternSet::from_string(std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("pattern set must be brace-enclosed", 0);
  std::string_view body = text.substr(1, text.size() - 2);
  if (body.empty()) throw ParseError("empty pattern set has no window order", 1);
  std::vector<Pattern> members;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string_view tok = body.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    if (tok.empty()) throw ParseError("empty pattern in set", pos + 1);
    try {
      members.push_back(Pattern::from_string(tok));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), pos + 1 + e.position);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  const int len = members.front().size();
  for (const Pattern& p : members)
    if (p.size() != len) throw ParseError("mixed pattern lengths in set", 1);
  if (len < 2) throw ParseError("patterns in a set must have length >= 2", 1);
  return PatternSet(len - 1, std::move(members));
}

bool PatternSet::contains(const Pattern& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

std::string PatternSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ',';
    out += members_[i].str();
  }
  out += '}';
  return out;
}

Pattern standardize(std::span<const double> x) {
  const int k = static_cast<int>(x.size());
  if (k < 1) throw Error("cannot standardize an empty tuple");
  std::vector<int> ranks(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    int r = 1;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      if (x[static_cast<std::size_t>(j)] == x[static_cast<std::size_t>(i)])
        throw DuplicateValue("tied coordinates at indices " + std::to_string(std::min(i, j)) +
                             " and " + std::to_string(std::max(i, j)));
      if (x[static_cast<std::size_t>(j)] < x[static_cast<std::size_t>(i)]) ++r;
    }
    ranks[static_cast<std::size_t>(i)] = r;
  }
  return Pattern(std::move(ranks));
}

int chi(const PatternSet& s, std::span<const double> x) {
  if (static_cast<int>(x.size()) != s.window())
    throw ArityMismatch("chi expects a tuple of length " + std::to_string(s.window()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) return 0;
  return s.contains(standardize(x)) ? 0 : 1;
}

bool avoids(const Pattern& pi, const PatternSet& s) {
  const int n = pi.size();
  const int k = s.window();
  if (n < k) return true;  // no window fits
  const ChiTable table(s);
  const auto& e = pi.entries();
  for (int j = 0; j + k <= n; ++j)
    if (!table(std::span<const int>(e.data() + j, static_cast<std::size_t>(k)))) return false;
  return true;
}

DescentWord descent_word(const Pattern& pi) {
  if (pi.size() < 2) throw TooShort("descent word needs length >= 2");
  return descent_word_of_values(pi.entries());
}

DescentWord descent_word_of_values(std::span<const int> values) {
  std::string w;
  w.reserve(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    w += values[i] < values[i + 1] ? 'a' : 'b';
  return DescentWord(std::move(w));
}

Pattern standardize_values(std::span<const int> values) {
  const int k = static_cast<int>(values.size());
  std::vector<int> ranks(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    int r = 1;
    for (int j = 0; j < k; ++j) {
      if (j != i && values[static_cast<std::size_t>(j)] == values[static_cast<std::size_t>(i)])
        throw DuplicateValue("tied values");
      if (values[static_cast<std::size_t>(j)] < values[static_cast<std::size_t>(i)]) ++r;
    }
    ranks[static_cast<std::size_t>(i)] = r;
  }
  return Pattern(std::move(ranks));
}

PatternSet patterns_of_descent_set(const std::vector<DescentWord>& u) {
  if (u.empty()) throw ArityMismatch("descent set must contain at least one word");
  const int m = u.front().size();
  for (const DescentWord& w : u)
    if (w.size() != m) throw ArityMismatch("descent words of mixed lengths");
  if (m < 1) throw ArityMismatch("descent words must have length >= 1");
  const std::set<DescentWord> uset(u.begin(), u.end());
  std::vector<Pattern> members;
  for (const Pattern& p : all_patterns(m + 1))
    if (uset.count(descent_word(p))) members.push_back(p);
  return PatternSet(m, std::move(members));
}

Pattern complement(const Pattern& pi) {
  std::vector<int> e = pi.entries();
  for (int& v : e) v = pi.size() + 1 - v;
  return Pattern(std::move(e));
}

Pattern reverse(const Pattern& pi) {
  std::vector<int> e = pi.entries();
  std::reverse(e.begin(), e.end());
  return Pattern(std::move(e));
}

bool is_indecomposable(const Pattern& pi) {
  int prefix_max = 0;
  for (int i = 0; i + 1 < pi.size(); ++i) {
    prefix_max = std::max(prefix_max, pi[i]);
    if (prefix_max == i + 1) return false;  // prefix maps onto {1..i+1}
  }
  return true;
}

std::vector<Pattern> all_patterns(int k) {
  std::vector<int> e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Pattern> out;
  do {
    out.emplace_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

Pattern monotone_increasing(int k) {
  std::vector<int> e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i + 1;
  return Pattern(std::move(e));
}

Pattern monotone_decreasing(int k) {
  std::vector<int> e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = k - i;
  return Pattern(std::move(e));
}

ChiTable::ChiTable(const PatternSet& s) : k_(s.window()) {
  if (k_ > 8) throw TooLarge("chi table limited to windows of length <= 8");
  std::size_t size = 1;
  for (int i = 0; i < k_; ++i) size *= static_cast<std::size_t>(k_);
  allowed_.assign(size, 0);
  for (const Pattern& p : all_patterns(k_)) {
    int code = 0;
    int pw = 1;
    for (int i = 0; i < k_; ++i) {
      code += (p[i] - 1) * pw;
      pw *= k_;
    }
    allowed_[static_cast<std::size_t>(code)] = s.contains(p) ? 0 : 1;
  }
}

}  // namespace pspec
