#include "imexstab/cli.hpp"

int main(int argc, char** argv) { return imexstab::cli::run(argc, argv); }
