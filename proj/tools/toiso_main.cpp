#include "toiso/cli.hpp"

int main(int argc, char** argv) { return toiso::cli::run(argc, argv); }
