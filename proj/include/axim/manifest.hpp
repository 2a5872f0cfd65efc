#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace axim {

// Ordered key=value text file recording every parameter of a CLI run, so a
// run can be reproduced from the manifest alone.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set_int(const std::string& key, std::int64_t value);
  void set_uint(const std::string& key, std::uint64_t value);
  void set_double(const std::string& key, double value);  // round-trip exact

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void save(const std::string& path) const;
  static Manifest load(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace axim
