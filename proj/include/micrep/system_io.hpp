#pragma once

#include "micrep/matrix.hpp"
#include "micrep/system.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace micrep {

enum class FileFormat {
  /// MIC system: `var` declarations, `chv` and affine `row` constraints.
  Mic,
  /// MILP system: `var ... aux` marks auxiliaries; `row` over all columns.
  Milp,
  /// Integral monoid {A x : x >= 0}: one `gen` line per column of A.
  Monoid,
  /// Cone: one `gen` line per generator.
  Cone,
  /// Integer system C z >= beta with numeric or symbolic (`b3`) rhs.
  Matrix,
};

struct SystemFile {
  FileFormat format = FileFormat::Mic;
  MicSystem mic;
  MilpSystem milp;
  std::vector<RationalVector> generators;
  /// Matrix format: the rows of C and each row's rhs tree.
  micrep::Matrix matrix;
  std::vector<ChvatalTree> rhs;
};

/// Parses the line-oriented format. Throws ParseError whose message starts
/// with "<source>:<line>:".
SystemFile parse_system(std::string_view text, const std::string& source = "<input>");
SystemFile read_system_file(const std::string& path);

/// Every constraint is written as a `chv` line so that the output reparses
/// to an equal system.
std::string format_mic(const MicSystem& sys);
std::string format_milp(const MilpSystem& sys);

/// Columns of the monoid matrix are the generators.
micrep::Matrix monoid_matrix(const std::vector<RationalVector>& generators);

}  // namespace micrep
