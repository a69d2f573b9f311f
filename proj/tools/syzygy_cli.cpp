#include "syzygy/check/cli.hpp"

int main(int argc, char** argv) { return syzygy::check::cli_main(argc, argv); }
