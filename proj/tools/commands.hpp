#ifndef SVOLTOOL_COMMANDS_HPP
#define SVOLTOOL_COMMANDS_HPP

namespace svoltool {

// Parse argv, dispatch to the selected subcommand, map exceptions to the
// documented exit codes: 0 ok, 2 flag/validation, 3 data, 4 numerical.
int run_cli(int argc, char** argv);

} // namespace svoltool

#endif
