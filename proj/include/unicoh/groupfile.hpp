#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unicoh/gallery.hpp"
#include "unicoh/torus.hpp"

namespace unicoh {

/// On-disk description of a torus with a generating set of automorphisms.
/// Schema v1: rationals travel as strings "p/q" so no float ever enters the
/// pipeline; generator matrices are plain integer arrays.
struct GroupFileData {
  int schema_version = 1;
  TorusModel torus;
  std::vector<TorusAutomorphism> generators;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Parses and fully validates (J^2 = -I, integrality, unimodularity,
/// commutation with J, translation shape). Violations raise ParseError
/// naming the offending generator and invariant.
GroupFileData parse_group_file(const std::string& text);

/// Canonical serialization: fixed key order, two-space indent, newline
/// terminated; parse-serialize round trips are byte-identical.
std::string serialize_group_file(const GroupFileData& data);

GroupFileData groupfile_from_case(const GalleryCase& c);

} // namespace unicoh
