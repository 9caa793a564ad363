// Copyright 2026 The vqepes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqepes/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Value of `KEY=<int>` inside the flattened namelist, if present.
std::optional<int> namelist_int(const std::string& header, const std::string& key) {
  std::size_t pos = 0;
  while ((pos = header.find(key, pos)) != std::string::npos) {
    const bool starts_word = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
    std::size_t j = pos + key.size();
    while (j < header.size() && header[j] == ' ') ++j;
    if (starts_word && j < header.size() && header[j] == '=') {
      ++j;
      while (j < header.size() && header[j] == ' ') ++j;
      int v = 0;
      auto [ptr, ec] = std::from_chars(header.data() + j, header.data() + header.size(), v);
      if (ec != std::errc{}) return std::nullopt;
      return v;
    }
    pos += key.size();
  }
  return std::nullopt;
}

double parse_real(std::string token, std::size_t line) {
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(fmt::format("non-numeric value '{}'", token), line);
  }
  return v;
}

int parse_index(const std::string& token, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(fmt::format("non-numeric index '{}'", token), line);
  }
  return v;
}

}  // namespace

void ElectronRepulsion::set_symmetric(int p, int q, int r, int s, double v) {
  const int perms[8][4] = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                           {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}};
  for (const auto& k : perms) (*this)(k[0], k[1], k[2], k[3]) = v;
}

FcidumpData parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  // Header namelist.
  std::string header;
  std::size_t header_start = 0;
  bool closed = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string u = upper(line);
    if (header_start == 0) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (u.find("&FCI") == std::string::npos) {
        throw ParseError("expected '&FCI' namelist header", line_no);
      }
      header_start = line_no;
    }
    header += ' ';
    header += u;
    const auto trimmed_end = u.find_last_not_of(" \t\r");
    if (u.find("&END") != std::string::npos ||
        (trimmed_end != std::string::npos && u[trimmed_end] == '/')) {
      closed = true;
      break;
    }
  }
  if (header_start == 0) throw ParseError("empty FCIDUMP", 0);
  if (!closed) throw ParseError("unterminated &FCI namelist (missing &END or '/')", header_start);

  const auto norb = namelist_int(header, "NORB");
  const auto nelec = namelist_int(header, "NELEC");
  if (!norb || *norb <= 0) throw ParseError("header lacks a positive NORB", header_start);
  if (!nelec || *nelec < 0) throw ParseError("header lacks NELEC", header_start);

  FcidumpData data;
  data.n_orb = *norb;
  data.n_elec = *nelec;
  data.ms2 = namelist_int(header, "MS2").value_or(0);
  data.h1 = OneBody(data.n_orb);
  data.h2 = ElectronRepulsion(data.n_orb);
  std::vector<double> eps(data.n_orb, 0.0);
  bool have_eps = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5) {
      throw ParseError(fmt::format("expected 'value p q r s', got {} fields", tok.size()), line_no);
    }
    const double v = parse_real(tok[0], line_no);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      idx[k] = parse_index(tok[k + 1], line_no);
      if (idx[k] < 0 || idx[k] > data.n_orb) {
        throw ParseError(fmt::format("index {} out of range 0..{}", idx[k], data.n_orb), line_no);
      }
    }
    const auto [p, q, r, s] = idx;
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      data.e_core = v;
    } else if (p > 0 && q > 0 && r > 0 && s > 0) {
      data.h2.set_symmetric(p - 1, q - 1, r - 1, s - 1, v);
    } else if (p > 0 && q > 0 && r == 0 && s == 0) {
      data.h1(p - 1, q - 1) = v;
      data.h1(q - 1, p - 1) = v;
    } else if (p > 0 && q == 0 && r == 0 && s == 0) {
      eps[p - 1] = v;
      have_eps = true;
    } else {
      throw ParseError(fmt::format("unrecognised index pattern {} {} {} {}", p, q, r, s), line_no);
    }
  }
  if (have_eps) data.orbital_energies = std::move(eps);
  return data;
}

FcidumpData read_fcidump(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return parse_fcidump(text);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

FixtureMetadata parse_metadata(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line + 1));
  }
  if (!root.IsMap()) throw ParseError("metadata must be a key: value map", 0);
  auto need = [&](const char* key) {
    const YAML::Node n = root[key];
    if (!n) throw ParseError(fmt::format("metadata key '{}' missing", key), 0);
    return n;
  };
  FixtureMetadata m;
  try {
    m.system = need("system").as<std::string>();
    m.distance_angstrom = need("distance_angstrom").as<double>();
    m.active_space = need("active_space").as<std::string>();
    m.ordering = need("ordering").as<std::string>();
    const YAML::Node hf = need("hf_energy_ha");
    if (!hf.IsNull()) m.hf_energy_ha = hf.as<double>();
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line + 1));
  }
  return m;
}

FixtureMetadata read_metadata(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return parse_metadata(text);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path.string());
  }
}

std::filesystem::path metadata_path_for(const std::filesystem::path& fcidump) {
  std::filesystem::path p = fcidump;
  p.replace_extension(".meta");
  return p;
}

}  // namespace vqepes
