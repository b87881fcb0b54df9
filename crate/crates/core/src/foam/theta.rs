/// Dotted theta evaluations: `THETA[i][j][k]` is the value of the theta
/// foam whose three disks, in the cyclic order of the singular circle,
/// carry `i`, `j` and `k` dots. Only the two cyclic classes of `(0, 1, 2)`
/// are non-zero; changing the convention means flipping both signs here.
pub const THETA: [[[i64; 3]; 3]; 3] = {
    let mut t = [[[0; 3]; 3]; 3];
    // (0,1,2) and its cyclic rotations
    t[0][1][2] = 1;
    t[1][2][0] = 1;
    t[2][0][1] = 1;
    // (0,2,1) and its cyclic rotations
    t[0][2][1] = -1;
    t[2][1][0] = -1;
    t[1][0][2] = -1;
    t
};
