#pragma once

#include "core/project.hpp"

#include <json.hpp>

#include <string>

namespace heurbench {

inline constexpr std::string_view kSchemaVersion = "1";

/// Canonical JSON form of the whole project. Object keys are sorted and all
/// rationals serialize as "numerator/denominator" strings, so equal states
/// produce byte-identical dumps.
nlohmann::json project_to_json(const ProjectState &state);
ProjectState project_from_json(const nlohmann::json &doc); // throws SchemaViolation et al.

nlohmann::json catalog_to_json(const HeuristicCatalog &catalog);
HeuristicCatalog catalog_from_json(const nlohmann::json &doc);

std::string canonical_project_text(const ProjectState &state);
std::string canonical_catalog_text(const HeuristicCatalog &catalog);

/// Atomic save (temp file + rename). Throws IoFailure.
void save_project(const ProjectState &state, const std::string &path);
ProjectState load_project(const std::string &path);

/// Advisory exclusive lock on <path>.lock, held for the lifetime of the
/// object. Mutating CLI commands take one around their load/modify/save.
class FileLock {
public:
  explicit FileLock(const std::string &path);
  ~FileLock();
  FileLock(const FileLock &) = delete;
  FileLock &operator=(const FileLock &) = delete;

private:
  int fd_ = -1;
};

} // namespace heurbench
