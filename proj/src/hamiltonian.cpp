// Copyright 2026 The stoqsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stoqsym/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace stoqsym {

char pauli_char(PauliType t) {
  switch (t) {
    case PauliType::X:
      return 'X';
    case PauliType::Y:
      return 'Y';
    case PauliType::Z:
      return 'Z';
  }
  return '?';
}

const CoefficientMap& Hamiltonian::terms(PauliType t) const {
  switch (t) {
    case PauliType::X:
      return alpha;
    case PauliType::Y:
      return beta;
    case PauliType::Z:
      break;
  }
  return kappa;
}

CoefficientMap& Hamiltonian::terms(PauliType t) {
  return const_cast<CoefficientMap&>(std::as_const(*this).terms(t));
}

int Hamiltonian::locality() const {
  int k = 0;
  for (const auto* m : {&alpha, &beta, &kappa}) {
    for (const auto& [b, c] : *m) k = std::max(k, hamming_weight(b));
  }
  return k;
}

Hamiltonian Hamiltonian::operator+(const Hamiltonian& other) const {
  if (other.n != n) {
    throw std::invalid_argument("cannot add Hamiltonians on different n");
  }
  Hamiltonian sum = *this;
  for (PauliType t : {PauliType::X, PauliType::Y, PauliType::Z}) {
    CoefficientMap& dst = sum.terms(t);
    for (const auto& [b, c] : other.terms(t)) {
      Rational total = dst.contains(b) ? dst[b] + c : c;
      if (total.is_zero()) {
        dst.erase(b);
      } else {
        dst[b] = total;
      }
    }
  }
  return sum;
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        message
                                  : message),
      line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Hamiltonian parse_hamiltonian(std::string_view text) {
  Hamiltonian h;
  std::set<std::pair<int, Bitmask>> seen;
  bool have_n = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "n") {
      if (have_n) throw ParseError(line_no, "duplicate 'n' directive");
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'n <int>'");
      int n = 0;
      auto [p, ec] = std::from_chars(tokens[1].data(),
                                     tokens[1].data() + tokens[1].size(), n);
      if (ec != std::errc{} || p != tokens[1].data() + tokens[1].size()) {
        throw ParseError(line_no, "qubit count is not an integer");
      }
      if (n < 1 || n > kMaxQubits) {
        throw ParseError(line_no, "qubit count must be in [1, " +
                                      std::to_string(kMaxQubits) + "]");
      }
      h.n = n;
      have_n = true;
      continue;
    }

    if (!have_n) throw ParseError(line_no, "'n <int>' must come first");
    if (tokens.size() != 3) {
      throw ParseError(line_no, "expected '<X|Y|Z> <support> <coefficient>'");
    }
    PauliType type;
    if (tokens[0] == "X") {
      type = PauliType::X;
    } else if (tokens[0] == "Y") {
      type = PauliType::Y;
    } else if (tokens[0] == "Z") {
      type = PauliType::Z;
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(tokens[0]) +
                                    "'");
    }
    Bitmask support;
    Rational coeff;
    try {
      support = parse_bitmask(tokens[1], h.n);
      coeff = Rational::parse(tokens[2]);
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (support == 0) {
      throw ParseError(line_no,
                       "identity support is not allowed (constant shift)");
    }
    if (type == PauliType::Y && hamming_weight(support) % 2 != 0) {
      throw ParseError(line_no, "Y term on odd-weight support " +
                                    std::string(tokens[1]));
    }
    if (!seen.insert({static_cast<int>(type), support}).second) {
      throw ParseError(line_no, std::string("duplicate ") + pauli_char(type) +
                                    " term on support " +
                                    std::string(tokens[1]));
    }
    // zero coefficients are accepted but not stored
    if (!coeff.is_zero()) h.terms(type).emplace(support, coeff);
  }
  if (!have_n) throw ParseError(0, "missing 'n <int>' directive");
  return h;
}

std::string serialize_hamiltonian(const Hamiltonian& h) {
  std::ostringstream out;
  out << "n " << h.n << '\n';
  for (PauliType t : {PauliType::X, PauliType::Y, PauliType::Z}) {
    std::vector<std::pair<std::string, Rational>> rows;
    for (const auto& [b, c] : h.terms(t)) {
      rows.emplace_back(format_bitmask(b, h.n), c);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [s, c] : rows) {
      out << pauli_char(t) << ' ' << s << ' ' << c.to_decimal_string() << '\n';
    }
  }
  return out.str();
}

ValidationReport validate_stoquastic(const Hamiltonian& h) {
  ValidationReport report;
  auto add = [&](std::string rule, PauliType t, Bitmask b, std::string msg) {
    report.violations.push_back({std::move(rule), t, b, std::move(msg)});
  };
  const Bitmask outside = ~full_mask(h.n);
  for (PauliType t : {PauliType::X, PauliType::Y, PauliType::Z}) {
    for (const auto& [b, c] : h.terms(t)) {
      std::string where = std::string(1, pauli_char(t)) + " term on " +
                          format_bitmask(b, h.n);
      if (b == 0) add("identity-term", t, b, where + ": identity support");
      if (b & outside) add("support-range", t, b, where + ": support exceeds n");
      if (c.is_zero()) add("zero-coefficient", t, b, where + ": stored zero");
    }
  }
  for (const auto& [b, a] : h.alpha) {
    if (a.sign() < 0) {
      add("negative-alpha", PauliType::X, b,
          "alpha_" + format_bitmask(b, h.n) + " = " + a.to_string() + " < 0");
    }
  }
  for (const auto& [b, beta] : h.beta) {
    if (hamming_weight(b) % 2 != 0) {
      add("odd-weight-y", PauliType::Y, b,
          "odd-weight Y term on " + format_bitmask(b, h.n));
    }
    auto it = h.alpha.find(b);
    Rational a = it == h.alpha.end() ? Rational(0) : it->second;
    if (beta.abs() > a) {
      add("beta-exceeds-alpha", PauliType::Y, b,
          "|beta| > alpha on " + format_bitmask(b, h.n) + " (|" +
              beta.to_string() + "| > " + a.to_string() + ")");
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::vector<Bitmask> edge_generators(const Hamiltonian& h) {
  std::vector<Bitmask> k;
  k.reserve(h.alpha.size());
  for (const auto& [b, a] : h.alpha) k.push_back(b);
  return k;
}

std::vector<Bitmask> gf2_basis(const std::vector<Bitmask>& vectors) {
  std::vector<Bitmask> basis;
  for (Bitmask v : vectors) {
    for (Bitmask e : basis) {
      Bitmask pivot = e & (~e + 1);  // lowest set bit
      if (v & pivot) v ^= e;
    }
    if (v == 0) continue;
    Bitmask pivot = v & (~v + 1);
    for (Bitmask& e : basis) {
      if (e & pivot) e ^= v;
    }
    basis.push_back(v);
  }
  return basis;
}

Bitmask gf2_reduce(Bitmask v, const std::vector<Bitmask>& basis) {
  for (Bitmask e : basis) {
    Bitmask pivot = e & (~e + 1);
    if (v & pivot) v ^= e;
  }
  return v;
}

int generator_rank(const std::vector<Bitmask>& generators) {
  return static_cast<int>(gf2_basis(generators).size());
}

}  // namespace stoqsym
