#include "moq_cli.hpp"

int main(int argc, char** argv) { return moq::cli::run(argc, argv); }
