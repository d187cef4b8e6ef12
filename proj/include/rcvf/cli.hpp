#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcvf {

/// The rcvf command line. `args` excludes the program name. JSON goes to
/// `out`, usage text and diagnostics to `err`.
///
/// Exit codes: 0 verified / consistent / no counterexample, 1 falsified,
/// rejected or not certified (with the witness on `out`), 2 usage or
/// internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcvf
