#include "torvol/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
	return torvol::cli::main(argc, argv, std::cout, std::cerr);
}
