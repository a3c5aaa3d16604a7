#pragma once

#include <string>

#include "mexp/expsum.hpp"
#include "mexp/lattice.hpp"

namespace mexp {

/// Parses a JSON scalar that is a number or a string like "2*pi", "pi/3",
/// "1.5*pi/2". Throws ParseError on anything else.
double parse_scalar_text(const std::string& text);

/// {"intervals": [[a, b], ...]} with numeric or "pi"-expression endpoints.
IntervalUnion spectrum_from_json(const std::string& text);
std::string spectrum_to_json(const IntervalUnion& E);

/// {"points": [[re, im], ...], "label": ...}
FrequencySet freqs_from_json(const std::string& text);
std::string freqs_to_json(const FrequencySet& freqs);

/// {"trunc": ..., "components": [{"zeros": [...], "shift": ..., "translate": ...}]}
GenFunctionSpec genfun_from_json(const std::string& text);
std::string genfun_to_json(const GenFunctionSpec& g);

/// {"spectrum": ..., "terms": [{"interval": j, "poly": [[re,im],...],
///  "freq": [re,im]}], "atoms": [{"interval": j, "location": x,
///  "weight": [re,im]}]}
ExpSum expsum_from_json(const std::string& text);
std::string expsum_to_json(const ExpSum& f);

/// PerturbedLattice with {"alpha", "M", "k_min", "gammas", "deltas"}.
std::string lattice_to_json(const PerturbedLattice& lat);

} // namespace mexp
