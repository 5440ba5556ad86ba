#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace lexishot::cli {

enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2 };

// Runs one subcommand. `args` excludes the program name. Report text goes to
// `out` (or the --output file), diagnostics to `err`.
//
// Subcommands: lexicon-stats, lexicon-validate, match, sample, complement,
// distribution, annotate-words, rep-shift, eval, eval-shots.
//
// `--config FILE` reads key=value lines that stand in for flags not given on
// the command line. Relative input paths that do not exist are retried under
// $LEXISHOT_DATA.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lexishot::cli
