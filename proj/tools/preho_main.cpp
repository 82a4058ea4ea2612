#include "preho/commands.hpp"

int main(int argc, char** argv) { return preho::cli_main(argc, argv); }
