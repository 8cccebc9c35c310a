from bispectral.fixtures import EXAMPLES, load_example
from bispectral.kernel.verification import verify_left, verify_right


def main():
    print("Loading worked examples…")

    for name in sorted(EXAMPLES):
        problem = load_example(name)
        psi = problem.function("Psi")
        print(f"\n[OK] Example {name} parsed ({psi.size}x{psi.size} kernel)")

        eigen = "F" if problem.has("F") else "p"
        left = verify_left(problem.operator("L"), psi, problem.eigenvalue(eigen))
        right = verify_right(psi, problem.operator("B"), problem.eigenvalue("Theta"))
        print("  left residual entries: ", len(left))
        print("  right residual entries:", len(right))
        if left or right:
            raise SystemExit(f"[FAIL] example {name} does not satisfy its identities")

    print("\n[OK] All identities verified")


if __name__ == "__main__":
    main()
