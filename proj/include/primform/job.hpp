#ifndef PRIMFORM_JOB_HPP
#define PRIMFORM_JOB_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "primform/rational.hpp"

namespace primform {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "saito-forms/1";

struct JobSpec {
  std::string command = "analyze";
  std::string mode = "polynomial";  // or "laurent_p1"
  std::vector<std::string> variables;
  std::vector<Rat> weights;
  std::string polynomial;
  std::optional<Rat> q;
  int order = 0;
  std::map<std::pair<int, int>, Rat> c;
  std::vector<int> mask;
  bool prune = true;
  std::string deformation = "linear";  // or "exponential" (laurent_p1 only)
  std::optional<std::string> representative;  // verify
  std::vector<std::pair<std::string, std::string>> pairs;  // pairing
  std::map<std::pair<int, int>, Rat> pairing_constants;  // moduli

  static JobSpec from_json(const Json& j);
  Json to_json() const;
};

bool operator==(const JobSpec& a, const JobSpec& b);

// Result document; structured error document on failure.
Json run(const JobSpec& job);

// Parses "i,j" keys.
std::pair<int, int> parse_index_pair(const std::string& s);

}  // namespace primform

#endif  // PRIMFORM_JOB_HPP
