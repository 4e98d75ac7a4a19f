// cli.hpp — command-line front end
//
//   validate     --config F
//   steady       --config F [--out PATH] [--format csv|json]
//   eigs         --config F [--out PATH]
//   spectrum     --config F [--nu-min R --nu-max R --nu-points N]
//                --method eq10|qrt|timedomain [--transition 1|2|3|all] --out PATH
//   populations  --config F [--delta1-min R --delta1-max R --points N] --out PATH
//   sweep-omega3 --config F [--min R --max R --points N] [--log] --out PATH
//   figure       fig2a|fig2b|fig3a|fig3b|fig4 --out-dir D
//   replay       --manifest F (--out PATH | --out-dir D)
//
// Exit status: 0 on success, 1 on a computation or I/O error (one line
// "error: <Code>: <message>" on stderr), 2 on argument misuse.

#pragma once

#include <iosfwd>

namespace flr4::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace flr4::cli
