"""C3 >-> S3 ->> C2: induced action, semidirect product, connector and direction."""
from monext.action import connector, semidirect, to_semimodule
from monext.direction import direction_bundle, df_isomorphism
from monext.extension import s3_extension
from monext.finmon import is_isomorphic, kernel_objects, symmetric3


def main():
    E = s3_extension()
    S = to_semimodule(E)
    print("kernel elements:", E.K.labels)
    print("action of the odd class:", S.act[1])
    print("semidirect product is S3:", is_isomorphic(semidirect(S).B, symmetric3()) is not None)
    _, _, eq = kernel_objects(E.f)
    con = connector(eq, eq)
    X = E.X
    ok = all(con(x, y, z) == X.mul(X.mul(x, X.inverse(y)), z) for (x, y, z) in con.composite.labels)
    print("connector on Eq(f) is x - y + z:", ok)
    b = direction_bundle(E)
    print("direction order:", b.df.order, "comparison:", list(df_isomorphism(b).lam.map))


if __name__ == "__main__":
    main()
