#pragma once

#include <string>

#include "signorini/blowup.hpp"
#include "signorini/free_boundary.hpp"
#include "signorini/frequency.hpp"
#include "signorini/solver.hpp"

namespace signorini {

/// Comma-separated frequency table: header r,S_r,V_r,D_r,phi_avg then one
/// row per radius. Deterministic %.12g formatting throughout.
std::string frequency_csv(const FrequencyReport& report);

/// Structured-text summary: center, mu fit, flags, violation lists.
std::string frequency_summary(const FrequencyReport& report, const MonotonicityReport& mono);

/// Convergence log CSV: sweep,max_update,energy.
std::string convergence_csv(const SolveResult& result);

std::string solve_summary(const SolveResult& result);

/// Structured-text record of a blow-up classification.
std::string classification_text(const BlowupClassification& c);
std::string classification_text(const MultiScaleClassification& c, const Vec& center);

/// Contact nodes as coordinate list, one node per line.
std::string contact_text(const ContactSet& c);

/// Interface cells and graph table for a free-boundary result.
std::string interface_text(const FreeBoundaryResult& fb);
std::string graph_csv(const FreeBoundaryResult& fb);

std::string quotient_text(const QuotientReport& q);
std::string barrier_text(const BarrierReport& b);

std::string regularity_text(const RegularityDiagnostics& d);

/// Write a string to a file, throwing IoError on failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace signorini
