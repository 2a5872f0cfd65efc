#include "axim/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace axim {

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Manifest::set_int(const std::string& key, std::int64_t value) {
  set(key, std::to_string(value));
}

void Manifest::set_uint(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

void Manifest::set_double(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  set(key, buf);
}

bool Manifest::has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

const std::string& Manifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  throw std::runtime_error("manifest: missing key '" + key + "'");
}

std::string Manifest::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

std::int64_t Manifest::get_int(const std::string& key) const {
  return std::stoll(get(key));
}

std::uint64_t Manifest::get_uint(const std::string& key) const {
  return std::stoull(get(key));
}

double Manifest::get_double(const std::string& key) const { return std::stod(get(key)); }

void Manifest::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("manifest: cannot open " + path);
  for (const auto& [k, v] : entries_) os << k << "=" << v << "\n";
  if (!os) throw std::runtime_error("manifest: write failed for " + path);
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("manifest: cannot open " + path);
  Manifest m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("manifest: malformed line '" + line + "' in " + path);
    }
    m.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return m;
}

}  // namespace axim
