import pytest

import icspin


@pytest.fixture(scope="session")
def system():
    return icspin.default_system()


@pytest.fixture(scope="session")
def registers():
    return icspin.registers_system()


@pytest.fixture(scope="session")
def h_subspace(system):
    return icspin.subspace_hamiltonian(system)


@pytest.fixture(scope="session")
def hadamard_seq():
    return icspin.load_sequence(icspin.data_path("sequences/hadamard.json"))


@pytest.fixture(scope="session")
def cnot_seq():
    return icspin.load_sequence(icspin.data_path("sequences/cnot.json"))
