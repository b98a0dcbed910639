#pragma once

// Command-line front end: quiver show, dims, pbw solve/check, mckay,
// sra nf/reflections, morita verify.

#include <iosfwd>

namespace wpa {

/// Exit code 0 iff the requested computation succeeded and every certificate
/// in its report passed; 1 for a failed certificate; 2 for usage or input
/// errors.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wpa
