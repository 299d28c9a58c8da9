#ifndef PROBLOGIC_GALLERY_HPP
#define PROBLOGIC_GALLERY_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace problogic {

class UnknownCaseError : public std::runtime_error {
 public:
  explicit UnknownCaseError(const std::string& name)
      : std::runtime_error("unknown gallery case: " + name) {}
};

struct CaseReport {
  std::string name;
  std::string description;
  bool pass = false;
  std::vector<std::string> details;
};

std::vector<std::string> gallery_case_names();

/// Runs one registered scenario. Deterministic; throws UnknownCaseError
/// for unregistered names.
CaseReport run_case(const std::string& name);
std::vector<CaseReport> run_all_cases();

std::string report_to_text(const CaseReport& r);
std::string report_to_json(const CaseReport& r);

}  // namespace problogic

#endif
