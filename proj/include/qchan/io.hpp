#pragma once

#include <optional>
#include <string>

#include "qchan/channels.hpp"

namespace qchan {

/// A parsed channel file: exactly one of `op` (single operation, `kraus`
/// key) or `observed` (`branches` key) is set.
struct ChannelFile {
  std::optional<QuantumOperation> op;
  std::optional<ObservedChannel> observed;

  bool is_observed() const { return observed.has_value(); }
  /// The single operation, or the branch sum of an observed channel.
  QuantumOperation as_operation() const;
};

/// Parses a channel file. Schema (JSON): a single operation carries
/// dim_in, dim_out and kraus = list of matrices; an observed channel
/// carries a branches list of such objects. Matrices are lists of rows,
/// entries are [real, imaginary] pairs. Errors name the offending field.
ChannelFile load_channel_file(const std::string& path);
ChannelFile parse_channel_json(const std::string& text);

std::string channel_to_json(const QuantumOperation& op);
std::string channel_to_json(const ObservedChannel& obs);

/// State files share the matrix syntax under a single `dim` field:
/// {"dim": d, "matrix": [...rows...]}.
DensityOperator load_state_file(const std::string& path);
DensityOperator parse_state_json(const std::string& text);
std::string state_to_json(const DensityOperator& rho);

/// Same file syntax without the density-operator validation (used where a
/// state file carries a projector).
CMatrix load_matrix_file(const std::string& path);
CMatrix parse_matrix_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// FNV-1a hash of the file bytes, as printed in run reports.
std::string file_digest(const std::string& path);

}  // namespace qchan
