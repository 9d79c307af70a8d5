#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bclkit::cli
{

// Runs one subcommand. `args` excludes the program name.
// Exit codes: 0 true/valid/verified, 1 false/countermodel/rejected, 2 usage or input error.
int run( const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err );

} // namespace bclkit::cli
