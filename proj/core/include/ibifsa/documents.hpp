#pragma once

#include <string>
#include <utility>

#include "ibifsa/group.hpp"
#include "ibifsa/ifs.hpp"
#include "ibifsa/machine.hpp"
#include "ibifsa/report.hpp"

namespace ibifsa {

// JSON document I/O. Serialization is canonical (sorted keys, two-space
// indent, trailing newline), so identical values produce identical bytes.
// Rationals appear as "p/q" in lowest terms, or bare "0"/"1".

std::string group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const std::string& text);

/// Accepts a family shorthand ("cyclic:4", "klein4", ...) or a path to a
/// group document.
FiniteGroup load_group(const std::string& path_or_spec);

std::string hom_to_json(const GroupHomomorphism& f);
GroupHomomorphism hom_from_json(const std::string& text);

std::string ifs_to_json(const IFSubset& s, const std::string& carrier = "group");
std::pair<IFSubset, std::string> ifs_from_json(const std::string& text);

std::string machine_to_json(const Machine& m);
Machine machine_from_json(const std::string& text);

std::string degree_report_to_json(const DegreeReport& report);
std::string degree_report_to_text(const DegreeReport& report);

std::string matrix_pair_to_json(const Machine& m, const TransitionMatrixPair& pair);
std::string matrix_pair_to_text(const Machine& m, const TransitionMatrixPair& pair);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit hash as fixed-width hex; instance digests in search reports.
std::string digest_hex(const std::string& text);

} // namespace ibifsa
