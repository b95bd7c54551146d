#pragma once

// Text persistence for classification databases and the report tables.
//
// File format, one block per record, records in ascending canonical order:
//
//   SDDB 1
//   n=<n> d=<d|any> count=<c> certified=<0|1>
//   code id=<hex digest> aut=<order> minwt=<d>
//   <k lines of n characters over 01>
//   end

#include <iosfwd>
#include <string>

#include "sdc/classify.hpp"

namespace sdc {

// FNV-1a 64 over the row strings (each newline-terminated).
std::string digest_hex(const GenMatrix& m);

std::string serialize(const Layer& layer);
Layer parse_db(std::istream& in);
Layer parse_db(const std::string& text);

// All records of one length in one mixed-d database (d field "any").
Layer combined_layer(const LengthClassification& lc);

enum class ReportKind { Counts, WE, Aut, Shadow, CR };
ReportKind report_kind_from_string(const std::string& s);

// counts requires a certified database; analytics kinds recompute from the
// stored generator matrices.
std::string report(const Layer& db, ReportKind kind);

}  // namespace sdc
