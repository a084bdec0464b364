#pragma once

#include <string>
#include <vector>

namespace risplit {

// Shortest decimal form that round-trips to the same double (infinities come
// out as "inf"/"-inf").  Used for every number we print, so identical values
// always serialize to identical bytes.
std::string fmt_double(double x);

// Joins the fields with commas and appends a newline.  Fields are expected
// to be comma-free; we never emit quoted CSV.
std::string csv_row(const std::vector<std::string>& fields);

// Writes content to path via a temp file in the same directory plus rename,
// so a crash can leave a stray .tmp but never a half-written target.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace risplit
