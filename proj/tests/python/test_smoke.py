"""Smoke tests for the python module: pairing math, commitments, one full
session, and the published cost numbers."""

import unittest

import hypersum


class PairingTests(unittest.TestCase):
    def test_dimension_count(self):
        self.assertEqual(hypersum.dimension_count(8), 3)
        self.assertEqual(hypersum.dimension_count(2), 1)
        with self.assertRaises(Exception):
            hypersum.dimension_count(12)

    def test_peer_index(self):
        self.assertEqual(hypersum.peer_index(0, 0, 3, "A"), 1)
        self.assertEqual(hypersum.peer_index(0, 0, 3, "B"), 4)
        self.assertEqual(hypersum.peer_index(5, 1, 3, "A"), 7)

    def test_hamming(self):
        self.assertEqual(hypersum.hamming_distance(0b101, 0b010), 3)


class CommitmentTests(unittest.TestCase):
    def test_pinned_zero_vector(self):
        import hashlib

        expected = hashlib.sha256(bytes(32)).hexdigest()
        self.assertEqual(hypersum.commit(0, 0), expected)

    def test_verify(self):
        digest = hypersum.commit(5, 9)
        self.assertTrue(hypersum.verify_commitment(digest, 5, 9))
        self.assertFalse(hypersum.verify_commitment(digest, 5, 10))


class SessionTests(unittest.TestCase):
    def test_eight_party_session(self):
        out = hypersum.run_session(8, 1, secrets=list(range(1, 9)))
        self.assertEqual(out["final_sum"], 36)
        report = out["report"]
        self.assertTrue(report["completed"])
        self.assertEqual(report["stages_executed"], 3)
        self.assertEqual(report["per_party_results"], ["36"] * 8)

    def test_determinism(self):
        a = hypersum.run_session(4, 7)
        b = hypersum.run_session(4, 7)
        self.assertEqual(a["report"], b["report"])

    def test_snapshot_mappings(self):
        out = hypersum.run_session(4, 2, with_snapshot=True)
        snapshot = out["snapshot"]
        for key in (
            "registration_ids",
            "commitments_a",
            "commitments_b",
            "temp_commitments_a",
            "temp_commitments_b",
            "public_keys",
            "secret_messages_a",
            "secret_messages_b",
        ):
            self.assertIn(key, snapshot)

    def test_fault_containment(self):
        report = hypersum.run_adversarial(8, 3, "double-register")
        self.assertFalse(report["completed"])
        self.assertEqual(report["transcript"][-1]["outcome"], "AlreadyRegistered")


class CostTests(unittest.TestCase):
    def test_gas_formulas(self):
        self.assertEqual(hypersum.per_user_gas(2), 3_047_805)
        self.assertEqual(hypersum.per_user_gas(128), 19_815_927)
        self.assertEqual(hypersum.system_gas(8), 136_169_920)

    def test_averaged_gas(self):
        self.assertEqual(hypersum.averaged_verify_gas(8, 1, 9), (4, 1))

    def test_overheads(self):
        row = hypersum.overhead_counts(32)
        self.assertEqual(row["proofs_party"], 10)
        self.assertEqual(row["proofs_system"], 320)
        self.assertEqual(row["keys_system"], 512)


if __name__ == "__main__":
    unittest.main()
