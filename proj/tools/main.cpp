#include "commands.hpp"

int main(int argc, char** argv) { return svoltool::run_cli(argc, argv); }
