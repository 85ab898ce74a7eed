#include <horoprod/cli.hpp>

int main(int argc, char** argv) { return horoprod::cli::run(argc, argv); }
